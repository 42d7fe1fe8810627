#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mutt/loader.hpp"
#include "mutt/signature.hpp"

namespace mutt {

// Thrown by the factories when a prelude file fails to check.
class PreludeError : public std::runtime_error {
 public:
  PreludeError(std::string msg, Diagnostics ds)
      : std::runtime_error(std::move(msg)), diagnostics_(std::move(ds)) {}
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

// Embedded text of a shipped prelude file ("base.mutt", ...); empty if unknown.
std::string_view prelude_text(std::string_view file);

// Resolves includes against the embedded prelude first, then the filesystem.
IncludeResolver prelude_resolver();

// Loads a shipped prelude file from its embedded text.
Development prelude_development(const std::string& file, const LoadOptions& opts = {});

// Loads `file` on top of `base`, treating base.mutt as already included.
Development extend_development(const Parametrization& base, const SourceText& src,
                               const LoadOptions& opts = {});

Parametrization base_type_theory();
Parametrization prop_extension(const Parametrization& base);
Parametrization sprop_extension(const Parametrization& base);
Parametrization exc_extension(const Parametrization& base);

// Source of an axiom extension: an isolated sort Ax_<name> with copies of the
// base types, a box from Type, and an eliminator axiom_<name> on Unit_<name>
// whose codomain is `axiom_type` (surface syntax, closed, in the new sort).
std::string axiom_source(const std::string& name, const std::string& axiom_type,
                         bool isolated = true);
Parametrization axiom_extension(const Parametrization& base, const std::string& name,
                                const std::string& axiom_type);

// The types used by the shipped axiom files.
inline constexpr std::string_view kLemType =
    "Pi (P : Univ Ax_lem 0) -> Sum_lem P (P -> Bot_lem)";
inline constexpr std::string_view kNotLemType =
    "(Pi (P : Univ Ax_nlem 0) -> Sum_nlem P (P -> Bot_nlem)) -> Bot_nlem";

}  // namespace mutt
