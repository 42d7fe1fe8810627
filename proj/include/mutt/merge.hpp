#pragma once

#include <optional>

#include "mutt/check.hpp"
#include "mutt/diagnostics.hpp"
#include "mutt/signature.hpp"

namespace mutt {

struct ExtensionReport {
  bool is_proper = true;
  Diagnostics violations;
};

// p2 keeps every sort (with its flags) and every entry of p, and adds no
// eliminator on a universe of a sort p already knows.
ExtensionReport is_proper_extension(const Parametrization& p, const Parametrization& p2);

// Number of leading entries of `whole` equal to the entries of `prefix`;
// nullopt if prefix is not literally a prefix of whole.
std::optional<std::size_t> shared_prefix(const Signature& prefix, const Signature& whole);

struct MergeResult {
  std::optional<Parametrization> merged;
  Diagnostics diagnostics;
};

// Sorts of both sides, then p2's signature followed by p1's entries after
// the shared prefix p. The result is re-checked and must properly extend
// both inputs.
MergeResult merge(const Parametrization& p, const Parametrization& p1, const Parametrization& p2,
                  const CheckOptions& opts = {});

}  // namespace mutt
