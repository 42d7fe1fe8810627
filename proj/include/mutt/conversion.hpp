#pragma once

#include <iosfwd>
#include <optional>
#include <set>

#include "mutt/reduction.hpp"
#include "mutt/signature.hpp"

namespace mutt {

struct ConversionOptions {
  bool eta_functions = true;
  bool eta_negative_records = false;
  std::set<SortName> irrelevant_sorts;
  // When set, every comparison is logged here, indented by depth.
  std::ostream* trace = nullptr;
};

// Options seeded from the sort table (sorts flagged irrelevant).
ConversionOptions default_conversion_options(const Parametrization& p);

// Record eta applies to K only if K has a single builder whose rules are
// exactly one variable-returning rule per observation.
bool eta_record_allowed(const Signature& sig, const std::string& k);

// Typed conversion of t and u at ty (of sort `sort`). A null `ty` compares
// without type direction, which is how types themselves are compared.
bool conv_term(const Signature& sig, const Context& ctx, const TermP& t, const TermP& u,
               const TermP& ty, const SortName& sort, const ConversionOptions& opts, Fuel& fuel);
bool conv_term(const Signature& sig, const Context& ctx, const TermP& t, const TermP& u,
               const TermP& ty, const SortName& sort, const ConversionOptions& opts = {});

bool conv_type(const Signature& sig, const Context& ctx, const TermP& a, const TermP& b,
               const ConversionOptions& opts, Fuel& fuel);
bool conv_type(const Signature& sig, const Context& ctx, const TermP& a, const TermP& b,
               const ConversionOptions& opts = {});

struct NeutralType {
  TermP type;
  SortName sort;
};

// Both arguments must be neutral whnfs. Returns their common type on success.
std::optional<NeutralType> conv_neutral(const Signature& sig, const Context& ctx, const TermP& n1,
                                        const TermP& n2, const ConversionOptions& opts, Fuel& fuel);

}  // namespace mutt
