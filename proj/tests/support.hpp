#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mutt/loader.hpp"
#include "mutt/prelude.hpp"
#include "mutt/syntax.hpp"

namespace mutt::test {

std::string source_path(const std::string& rel);
std::string read_source(const std::string& rel);

// Loads text whose includes resolve against the embedded prelude.
Development load_text(const std::string& text, const LoadOptions& opts = {});
// Loads text on top of p (base.mutt counts as included).
Development extend(const Parametrization& p, const std::string& text, const LoadOptions& opts = {});

// Elaborates a closed surface term against a development.
TermP term(const Development& dev, const std::string& src);

const Diagnostic* first_error(const Development& dev);
std::string first_error_tag(const Development& dev);

// Arithmetic combinators over base: plus, mult, pred, double, rep, len, sum,
// iszero, ifz, pfst, psnd, transport, unboxn.
extern const char* const kArith;

// A closed arithmetic expression with its value from a direct interpreter.
struct NatExpr {
  enum Kind { Zero, Succ, Plus, Mult, Pred, Double, Len, Sum, Ifz, Fst, Snd, Transport, Unbox };
  Kind kind = Zero;
  std::vector<NatExpr> kids;
};

std::uint64_t eval(const NatExpr& e);
std::string to_source(const NatExpr& e);
// Random expression of bounded depth whose value and every intermediate value
// stay at or below `cap`.
NatExpr random_expr(std::mt19937& rng, int depth, std::uint64_t cap);

// n if t is S^n 0, built from constructors only.
std::optional<std::uint64_t> numeral_value(const TermP& t);

// The same parametrization with every rule list reversed, or shuffled when
// rng is given.
Parametrization permute_rules(const Parametrization& p, std::mt19937* rng = nullptr);

}  // namespace mutt::test
