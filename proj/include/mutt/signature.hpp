#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mutt/syntax.hpp"

namespace mutt {

enum class ConstKind { TypeConst, Constructor, Builder, Eliminator, Observation };

inline bool is_inert(ConstKind k) {
  return k == ConstKind::TypeConst || k == ConstKind::Constructor || k == ConstKind::Builder;
}
std::string kind_name(ConstKind k);

// params, dom and cod of a constant. For inert constants `dom` lists the
// recursive arguments; for active constants it holds exactly one entry, the
// scrutinee, whose sort is the domain sort. `cod` lives in params·dom.
struct ConstantDecl {
  std::string name;
  ConstKind kind = ConstKind::TypeConst;
  Context params;
  Context dom;
  TermP cod;
  SortName codsort;
  Level codlevel = 0;

  std::size_t arity() const { return params.size() + dom.size(); }
  const Binder& scrutinee() const { return dom.front(); }
};

// ?x or ?z{s}. `var` is a de Bruijn index into the rule's linear context.
struct MetaVar {
  std::uint32_t var = 0;
  std::optional<Subst> rec;
};

struct HeadPat {
  std::string name;
  std::vector<MetaVar> args;
};

// Pi^s q1 q2; sort/level annotate the domain for typing purposes only.
struct PiPat {
  SortName sort;
  Level level = 0;
  MetaVar dom;
  MetaVar cod;
};

using Pattern = std::variant<HeadPat, PiPat>;

inline const std::string kPiHead = "Pi";
std::string pattern_head(const Pattern& p);

struct RewriteRule {
  Context delta;
  Subst renaming;  // Δ ⊢ renaming : Δ_lin
  Context delta_lin;
  std::string head;
  Subst param_vars;  // Δ_lin ⊢ x̄ : params(head)
  Pattern pat;
  TermP rhs;  // lives in Δ · occrec(head, pat)[renaming]
  std::optional<Subst> tau;  // Δ_lin ⊢ tau : Δ
};

// First-occurrence preimage of the renaming; nullopt when some Δ variable is
// not hit.
std::optional<Subst> canonical_inverse(const RewriteRule& r);

struct PositiveType {
  ConstantDecl type;
  std::vector<ConstantDecl> constructors;
};
struct NegativeType {
  ConstantDecl type;
  std::vector<ConstantDecl> observations;
};
struct Eliminator {
  ConstantDecl decl;
  std::vector<RewriteRule> rules;
};
struct Builder {
  ConstantDecl decl;
  std::vector<RewriteRule> rules;
};

using SignatureEntry = std::variant<PositiveType, NegativeType, Eliminator, Builder>;

std::string entry_name(const SignatureEntry& e);
std::string entry_kind_name(const SignatureEntry& e);
const std::vector<RewriteRule>* entry_rules(const SignatureEntry& e);

bool decl_eq(const ConstantDecl& a, const ConstantDecl& b);
bool pattern_eq(const Pattern& a, const Pattern& b);
bool rule_eq(const RewriteRule& a, const RewriteRule& b);
bool entry_eq(const SignatureEntry& a, const SignatureEntry& b);

struct ConstInfo {
  const ConstantDecl* decl = nullptr;
  std::size_t entry = 0;
  std::string owner;  // the type constant a constructor/observation/builder belongs to
};

struct IndexedRule {
  const RewriteRule* rule = nullptr;
  std::optional<Subst> inverse;
};

// Ordered entries with lookup indexes. Entries are shared immutable objects,
// so copies are cheap and index pointers stay valid.
class Signature {
 public:
  void add(SignatureEntry e);

  const std::vector<std::shared_ptr<const SignatureEntry>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  const ConstInfo* lookup(const std::string& name) const;
  const ConstantDecl* decl(const std::string& name) const;
  const IndexedRule* rule_for(const std::string& d, const std::string& head) const;
  std::vector<const RewriteRule*> rules_of(const std::string& d) const;
  const std::vector<std::string>& constructors_of(const std::string& k) const;
  const std::vector<std::string>& observations_of(const std::string& k) const;
  const std::vector<std::string>& builders_of(const std::string& k) const;
  bool is_positive(const std::string& k) const;
  bool is_negative(const std::string& k) const;
  // Type constants in declaration order.
  const std::vector<std::string>& type_constants() const { return type_consts_; }

 private:
  void index_decl(const ConstantDecl& d, std::size_t entry, const std::string& owner);
  void index_rules(const std::vector<RewriteRule>& rules);

  std::vector<std::shared_ptr<const SignatureEntry>> entries_;
  std::map<std::string, ConstInfo> consts_;
  std::map<std::string, std::map<std::string, IndexedRule>> rules_;
  std::map<std::string, std::vector<const RewriteRule*>> all_rules_;
  std::map<std::string, std::vector<std::string>> ctors_, obs_, builders_;
  std::vector<std::string> type_consts_;
  std::map<std::string, bool> positive_;
};

struct SortInfo {
  SortName name;
  bool is_type = false;
  bool isolated = false;
  // Inductives of a restricted sort only eliminate into other sorts when they
  // are singletons.
  bool restricted = false;
  // Seeds ConversionOptions::irrelevant_sorts.
  bool irrelevant = false;
};

bool sort_info_eq(const SortInfo& a, const SortInfo& b);

struct Parametrization {
  std::vector<SortInfo> sorts{SortInfo{kTypeSort, true, false, false, false}};
  Signature sig;

  const SortInfo* sort(const SortName& name) const;
  bool has_sort(const SortName& name) const { return sort(name) != nullptr; }
  bool isolated(const SortName& name) const;
};

// For a type constant K: the universe its cod names.
std::optional<std::pair<SortName, Level>> type_constant_universe(const ConstantDecl& k);

}  // namespace mutt
