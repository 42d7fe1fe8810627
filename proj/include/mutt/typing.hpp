#pragma once

#include "mutt/conversion.hpp"
#include "mutt/diagnostics.hpp"
#include "mutt/reduction.hpp"
#include "mutt/signature.hpp"

namespace mutt {

// `type` inhabits Univ(sort, level).
struct TypingResult {
  TermP type;
  SortName sort;
  Level level = 0;
};

// Bidirectional checker over one parametrization. Every method throws
// KernelError on failure; one instance shares one fuel budget.
class Typer {
 public:
  explicit Typer(const Parametrization& p, ConversionOptions opts = {},
                 std::uint64_t fuel = kDefaultFuel);

  TypingResult infer(const Context& ctx, const TermP& t);
  void check(const Context& ctx, const TermP& t, const TermP& expected, const SortName& sort);
  // A must inhabit exactly Univ(sort, level).
  void check_type(const Context& ctx, const TermP& a, const SortName& sort, Level level);
  // The universe A inhabits.
  std::pair<SortName, Level> infer_type(const Context& ctx, const TermP& a);
  void check_binder(const Context& ctx, const Binder& b);
  void check_context(const Context& ctx);
  void check_substitution(const Context& ctx, const Subst& sub, const Context& target);
  // Pattern typing in Δ_lin; type equalities are decided after applying the
  // rule's renaming, in Δ.
  TypingResult check_pattern(const Context& lin, const Pattern& pat, const ConstantDecl& d,
                             const Subst& renaming, const Context& delta);
  void check_rewrite_rule(const RewriteRule& rule);

  bool convertible_types(const Context& ctx, const TermP& a, const TermP& b);
  TermP whnf(const TermP& t);
  const Parametrization& parametrization() const { return p_; }
  const ConversionOptions& options() const { return opts_; }
  Fuel& fuel() { return fuel_; }

 private:
  [[noreturn]] void mismatch(const Context& ctx, const TermP& got, const TermP& expected,
                             const std::string& what);
  TypingResult metavar_type(const Context& lin, const MetaVar& q, const ConstantDecl& d,
                            const Subst& renaming, const Context& delta);

  const Parametrization& p_;
  const Signature& sig_;
  ConversionOptions opts_;
  Fuel fuel_;
};

TypingResult infer(const Parametrization& p, const Context& ctx, const TermP& t,
                   const ConversionOptions& opts = {});
Diagnostics check(const Parametrization& p, const Context& ctx, const TermP& t,
                  const TermP& expected, const SortName& sort, const ConversionOptions& opts = {});
Diagnostics check_context(const Parametrization& p, const Context& ctx,
                          const ConversionOptions& opts = {});
Diagnostics check_substitution(const Parametrization& p, const Context& ctx, const Subst& sub,
                               const Context& target, const ConversionOptions& opts = {});
Diagnostics check_pattern(const Parametrization& p, const Context& lin, const Pattern& pat,
                          const TermP& expected, const SortName& sort, const std::string& d,
                          const ConversionOptions& opts = {});
Diagnostics check_rewrite_rule(const Parametrization& p, const RewriteRule& rule,
                               const ConversionOptions& opts = {});

Diagnostic to_diagnostic(const KernelError& e);

}  // namespace mutt
