#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mutt/diagnostics.hpp"
#include "mutt/signature.hpp"
#include "mutt/syntax.hpp"

namespace mutt {

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

class FuelExhausted : public KernelError {
 public:
  explicit FuelExhausted(std::uint64_t budget);
};

// Head-step budget shared by every reduction performed on behalf of one
// top-level request.
class Fuel {
 public:
  explicit Fuel(std::uint64_t budget = kDefaultFuel) : budget_(budget) {}
  void tick();
  std::uint64_t used() const { return used_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
};

enum class WhnfKind { Canonical, Neutral, Redex };

struct Classification {
  WhnfKind kind;
  // Canonical: the head ("lambda", "Pi", "Univ" or the constant). Redex: the
  // step that applies ("beta", "app-subs", "active-subs", "rewrite").
  std::string detail;
};

Classification classify(const Signature& sig, const TermP& t);

TermP whnf(const Signature& sig, const TermP& t, Fuel& fuel);
TermP whnf(const Signature& sig, const TermP& t);

// whnf, then recursively normalizes every subterm of the result.
TermP normalize(const Signature& sig, const TermP& t, Fuel& fuel);
TermP normalize(const Signature& sig, const TermP& t);

// Rule key of a canonical scrutinee: the inert head or "Pi".
std::optional<std::string> scrutinee_head(const TermP& w);

// Linear first-order matching of (x̄, ⌊pat⌋) against (params, scrutinee).
// Returns σ' listing the Δ_lin instances in context order.
std::optional<Subst> match_pattern(const RewriteRule& rule, const std::vector<TermP>& params,
                                   const TermP& scrutinee_whnf);

std::optional<TermP> fire(const Signature& sig, const std::string& d,
                          const std::vector<TermP>& params, const TermP& scrutinee_whnf);

// ⌊pat⌋, a term of Δ_lin.
TermP erase_pattern(const Pattern& pat);

// occrec(d, pat). Every entry is stated in Δ_lin alone; when appended to a
// context the k-th entry must be weakened by k. `names` (Δ_lin) only feeds
// binder hints.
Context occ_rec(const ConstantDecl& d, const Pattern& pat, const Context* names = nullptr);

// occrecsub(d, pat), terms of Δ_lin.
Subst occ_rec_sub(const std::string& d, const Pattern& pat);

}  // namespace mutt
