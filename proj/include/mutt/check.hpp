#pragma once

#include <string>
#include <vector>

#include "mutt/conversion.hpp"
#include "mutt/diagnostics.hpp"
#include "mutt/reduction.hpp"
#include "mutt/signature.hpp"

namespace mutt {

struct CheckOptions {
  ConversionOptions conv;
  std::uint64_t fuel = kDefaultFuel;
};

// Options seeded from the sort table of p.
CheckOptions default_check_options(const Parametrization& p);

// At most one rule per (head, pattern head).
bool check_determinism(const std::vector<RewriteRule>& rules, Diagnostics* out = nullptr);

// Some rule for d has pattern head c ("Pi" for the Pi former).
bool react(const Signature& sig, const std::string& d, const std::string& c);
bool react(const std::vector<RewriteRule>& rules, const std::string& d, const std::string& c);

// Every d in `actives` reacts to every c in `inerts` through `rules`.
bool check_progress(const std::vector<std::string>& inerts, const std::vector<std::string>& actives,
                    const std::vector<RewriteRule>& rules, Diagnostics* out = nullptr);

// The inert heads an eliminator must react to: Pi and the type constants of
// its universe domain, or the constructors of its positive domain.
std::vector<std::string> eliminator_heads(const Signature& sig, const ConstantDecl& d);

// A positive type of a restricted sort may eliminate into another sort only
// if it has at most one constructor and every field lives in its sort.
bool is_singleton(const Parametrization& p, const PositiveType& k);

// Checks against the prefix `p` (which must not already contain the entry).
Diagnostics check_positive_type(const Parametrization& p, const PositiveType& e,
                                const CheckOptions& opts = {});
Diagnostics check_negative_type(const Parametrization& p, const NegativeType& e,
                                const CheckOptions& opts = {});
Diagnostics check_eliminator(const Parametrization& p, const Eliminator& e,
                             const CheckOptions& opts = {});
Diagnostics check_builder(const Parametrization& p, const Builder& e, const CheckOptions& opts = {});
Diagnostics check_entry(const Parametrization& p, const SignatureEntry& e,
                        const CheckOptions& opts = {});

Diagnostics check_sorts(const Parametrization& p);

// Sort table, then every entry against its prefix (stopping at the first
// rejected entry), then the record-eta compatibility check if enabled.
Diagnostics check_signature(const Parametrization& p, const CheckOptions& opts);
Diagnostics check_signature(const Parametrization& p);

// With record eta on, reports negative types whose builders carry rules other
// than the canonical projections.
Diagnostics check_eta_compat(const Parametrization& p, const ConversionOptions& opts);

}  // namespace mutt
