#include "mutt/diagnostics.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mutt {

namespace {

const std::map<std::string, std::string, std::less<>>& table() {
  static const std::map<std::string, std::string, std::less<>> t = {
      {tag::kSyntax, "Syntax error: the input does not follow the surface grammar."},
      {tag::kScope, "Scope error: a name does not refer to a variable, constant or definition in scope."},
      {tag::kUnbound, "Variable rule: a de Bruijn index points past the end of the context."},
      {tag::kNotAFunction,
       "Application rule: the head of an application must have a dependent function type."},
      {tag::kSortMismatch,
       "Conversion rule, sort component: a term of sort s can only be used where sort s is "
       "expected, and universes of different sorts are distinct types."},
      {tag::kLevelMismatch,
       "Universe levels are explicit and non-cumulative: a type at level i is not a type at "
       "level j for i != j."},
      {tag::kArity,
       "Constant rules: an inert constant takes exactly its parameters and recursive arguments, "
       "an active constant its parameters and one scrutinee; substitutions must match their "
       "telescope in length."},
      {tag::kTypeMismatch, "Conversion rule: the inferred type is not convertible to the expected one."},
      {tag::kConversion, "Conversion failed while comparing two terms."},
      {tag::kNotAType, "The term was expected to be a type, i.e. to inhabit some universe."},
      {tag::kPattern,
       "Pattern typing: metavariables are typed by the linear context, recursive occurrences "
       "?z{s} need s to instantiate params(d) and z to have type dom(d)[s], and constructor "
       "patterns are typed like the corresponding terms."},
      {tag::kSortTable,
       "Sort table: sort names are unique, exactly one sort is the primordial Type, and Type is "
       "never isolated."},
      {tag::kOrder,
       "Signature order: constant names are unique and an entry may only mention constants "
       "declared before it."},
      {tag::kPos1,
       "Well-formed positive type, clause 1: no active constant may already be defined on the "
       "universe U_s in which the new type lives."},
      {tag::kPos2,
       "Well-formed positive type, clause 2: params(K) is a well-formed context and dom(K) is "
       "empty."},
      {tag::kPos3,
       "Well-formed positive type, clause 3: every constructor has well-formed parameters, each "
       "recursive argument has type exactly K(t) with t : params(K), and its index substitution "
       "u satisfies u : params(K)."},
      {tag::kNeg1,
       "Well-formed negative type, clause 1: no active constant may already be defined on the "
       "universe U_s in which the new type lives."},
      {tag::kNeg2,
       "Well-formed negative type, clause 2: params(K) is a well-formed context and dom(K) is "
       "empty."},
      {tag::kNeg3,
       "Well-formed negative type, clause 3: every observation has params(K) as parameters, "
       "K(id) as domain, and a codomain typed using only earlier observations."},
      {tag::kIsolation,
       "Isolation invariant: an active constant whose domain lives in an isolated sort must land "
       "in an isolated sort, so information never flows out of an isolated sort."},
      {tag::kElimDomain,
       "Well-formed eliminator: the domain is a universe U_s or a positive type constant applied "
       "to arguments."},
      {tag::kElimTyping,
       "Well-formed eliminator: params(d) is a well-formed context and dom(d), cod(d) are types "
       "in it."},
      {tag::kBuilderTyping,
       "Well-formed builder: params and recursive arguments are well-formed and the codomain is "
       "a negative type K(u) with u : params(K)."},
      {tag::kProgress,
       "Rewrite progress: unless its codomain sort is isolated, an active constant must react to "
       "every inert head of its domain (for a universe domain: Pi and every type constant of "
       "that universe)."},
      {tag::kDeterminism,
       "Rewrite determinism: at most one rule per active constant and pattern head."},
      {tag::kRuleHead,
       "Rule placement: rules of an eliminator are headed by it; rules of a builder are headed "
       "by an observation of its type and match on the builder."},
      {tag::kRewRenaming, "Rule validity (i): the renaming s must be a substitution from the linear context into the non-linear one."},
      {tag::kRewParams, "Rule validity (ii): the parameter variables must instantiate params(d) in the linear context."},
      {tag::kRewPattern,
       "Rule validity (iii): the pattern must be well typed in the linear context, with a type "
       "convertible to dom(d) once the renaming is applied."},
      {tag::kRewRhs,
       "Rule validity (iv): the right-hand side must check against cod(d) instantiated by the "
       "left-hand side, in the non-linear context extended with the recursive results."},
      {tag::kLinearA,
       "Linearizability (a): every variable of the linear context occurs exactly once in the "
       "parameters and the erased pattern."},
      {tag::kLinearB,
       "Linearizability (b): a rule of an eliminator on a universe must be linear (identical "
       "contexts, identity renaming)."},
      {tag::kLinearB2,
       "Linearizability (b'): after unifying the indices of the pattern with those of dom(d), "
       "the renaming must admit an inverse t with t[s] = id and s[t] = id up to the unifier."},
      {tag::kSingleton,
       "Singleton elimination: an inductive of a restricted sort only eliminates into another "
       "sort when it has at most one constructor and every field lives in the restricted sort."},
      {tag::kEtaConflict,
       "Record eta is refused for a negative type whose builders carry rules other than the "
       "canonical projection rules."},
      {tag::kFuel, "The reduction step budget was exhausted before reaching a weak-head normal form."},
      {tag::kSharedSort,
       "Merge precondition: the two extensions may only share the sorts of the common base."},
      {tag::kPrefix, "Merge precondition: the base signature must be a literal prefix of both extensions."},
      {tag::kPostMerge, "The merged parametrization failed re-checking or is not a proper extension of its inputs."},
      {tag::kImproper,
       "Proper extension: sorts and entries are preserved, isolation flags are unchanged and "
       "every new universe eliminator lives on a new sort."},
      {tag::kDirective, "A check, def or normalize directive failed."},
      {tag::kIo, "A file could not be read or written."},
  };
  return t;
}

}  // namespace

bool has_error(const Diagnostics& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string severity_name(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Note: return "note";
  }
  return "error";
}

std::string format(const Diagnostic& d) {
  std::ostringstream os;
  if (!d.span.file.empty()) {
    os << d.span.file;
    if (d.span.line > 0) os << ":" << d.span.line << ":" << d.span.col;
    os << ": ";
  }
  os << severity_name(d.severity) << " [" << d.tag << "] " << d.message;
  return os.str();
}

std::optional<std::string> explain(std::string_view t) {
  const auto& tb = table();
  auto it = tb.find(t);
  if (it == tb.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> known_tags() {
  std::vector<std::string> out;
  for (const auto& [k, v] : table()) out.push_back(k);
  return out;
}

}  // namespace mutt
