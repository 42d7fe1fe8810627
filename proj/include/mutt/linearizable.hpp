#pragma once

#include <optional>

#include "mutt/diagnostics.hpp"
#include "mutt/signature.hpp"

namespace mutt {

// First-order syntactic unification over the variables of a context of
// length n. Bound variables met under binders are rigid.
class Unifier {
 public:
  explicit Unifier(std::uint32_t n) : binding_(n) {}
  bool unify(const TermP& a, const TermP& b);
  // Applies the bindings until no bound variable remains.
  TermP resolve(const TermP& t) const;

 private:
  bool unify_at(const TermP& a, const TermP& b, std::uint32_t depth);
  TermP walk(const TermP& t, std::uint32_t depth) const;
  bool bind(std::uint32_t var, const TermP& t, std::uint32_t depth);

  std::vector<TermP> binding_;
};

// Conditions (a), (b) and (b') of linearizability. Throws KernelError.
void check_linearizable_or_throw(const Signature& sig, const RewriteRule& rule);
bool check_linearizable(const Signature& sig, const RewriteRule& rule,
                        Diagnostics* out = nullptr);

}  // namespace mutt
