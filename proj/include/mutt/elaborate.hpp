#pragma once

#include <map>
#include <string>
#include <vector>

#include "mutt/ast.hpp"
#include "mutt/check.hpp"
#include "mutt/signature.hpp"

namespace mutt {

// Closed terms bound by `def`, inlined wherever their name appears.
using Definitions = std::map<std::string, TermP>;

// Names in scope, innermost last, together with their binders.
struct Scope {
  Context ctx;
  std::vector<std::string> names;

  void push(Binder b, std::string name);
  void pop();
};

// Resolves names to de Bruijn indices and constants, consumes constant
// arguments by arity, and fills in binder sorts and levels that the source
// leaves out by inferring them. Errors are SpannedError.
class Elaborator {
 public:
  Elaborator(const Parametrization& p, const Definitions& defs, CheckOptions opts);

  TermP term(Scope& sc, const ast::TermP& t);
  TermP closed_term(const ast::TermP& t);
  // Pushes the binders of `groups` onto sc and returns them as a telescope.
  Context telescope(Scope& sc, const std::vector<ast::BinderGroup>& groups);

  PositiveType positive(const ast::PositiveDecl& d);
  NegativeType negative(const ast::NegativeDecl& d);
  Eliminator eliminator(const ast::EliminatorDecl& d);
  Builder builder(const ast::BuilderDecl& d);
  // `p_` must already contain the rule's head.
  RewriteRule rule(const ast::Rule& r);

 private:
  TermP unit(Scope& sc, const std::vector<ast::TermP>& items, std::size_t& i, const Span& span);
  std::pair<SortName, Level> universe_of(const Scope& sc, const TermP& a, const Span& span);
  ConstantDecl inert_decl(const ast::InertDecl& d, ConstKind kind);

  const Parametrization& p_;
  const Definitions& defs_;
  CheckOptions opts_;
};

}  // namespace mutt
