#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mutt/lexer.hpp"
#include "mutt/syntax.hpp"

namespace mutt::ast {

// Surface syntax before name resolution.

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Name {
  std::string text;
  Span span;
};

// (x y : A @ s # i); the annotation is optional.
struct BinderGroup {
  std::vector<Name> names;
  TermP type;
  std::optional<SortName> sort;
  std::optional<Level> level;
  Span span;
};

struct Term {
  enum class Kind { Name, Univ, Fun, Pi, Arrow, Apps };
  Kind kind = Kind::Name;
  Span span;
  std::string name;                  // Name
  SortName sort;                     // Univ
  Level level = 0;                   // Univ
  std::vector<BinderGroup> binders;  // Fun, Pi
  TermP body;                        // Fun, Pi; codomain of Arrow
  TermP dom;                         // Arrow
  std::vector<TermP> items;          // Apps, in Polish order
};

// One item of a rule's left-hand side: a parameter name or pattern head, a
// metavariable, or the Pi head.
struct LhsItem {
  enum class Kind { Name, Meta, PiHead };
  Kind kind = Kind::Name;
  std::string name;
  std::optional<std::vector<TermP>> rec;  // Meta with {…}
  SortName sort;                          // PiHead
  Level level = 0;                        // PiHead
  Span span;
};

struct Rule {
  Name head;
  std::vector<LhsItem> lhs;
  TermP rhs;
  std::vector<BinderGroup> lin;
  std::optional<std::vector<BinderGroup>> delta;
  std::vector<Name> via;
  std::optional<std::vector<Name>> tau;
  Span span;
};

struct SortDecl {
  Name name;
  bool isolated = false;
  bool restricted = false;
  bool irrelevant = false;
};

struct InertDecl {  // constructors and builders
  Name name;
  std::vector<BinderGroup> params;
  std::vector<BinderGroup> recs;
  TermP cod;
};

struct Observation {
  Name name;
  TermP cod;
  std::optional<SortName> sort;
  std::optional<Level> level;
};

struct PositiveDecl {
  Name name;
  std::vector<BinderGroup> params;
  TermP cod;
  std::vector<InertDecl> constructors;
};

struct NegativeDecl {
  Name name;
  std::vector<BinderGroup> params;
  TermP cod;
  Name self;
  std::vector<Observation> observations;
};

struct EliminatorDecl {
  Name name;
  std::vector<BinderGroup> params;
  BinderGroup scrutinee;
  TermP cod;
  std::optional<SortName> sort;
  std::optional<Level> level;
  std::vector<Rule> rules;
};

struct BuilderDecl {
  InertDecl decl;
  std::vector<Rule> rules;
};

struct Def {
  Name name;
  TermP type;  // may be null
  TermP body;
};

struct Check {
  TermP term;
  TermP type;  // may be null
};

struct Normalize {
  TermP term;
};

struct Include {
  std::string path;
};

using DeclNode = std::variant<SortDecl, PositiveDecl, NegativeDecl, EliminatorDecl, BuilderDecl, Def,
                              Check, Normalize, Include>;

struct Decl {
  DeclNode node;
  Span span;
};

struct SourceFile {
  std::string path;
  std::vector<Decl> decls;
};

// Throws SpannedError (tag "syntax") at the first offending token.
SourceFile parse(std::string_view src, const std::string& path);
TermP parse_term(std::string_view src, const std::string& path = "<term>");

}  // namespace mutt::ast
