#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace mutt {

using Level = std::uint32_t;
using SortName = std::string;

inline const SortName kTypeSort = "Type";

// Placeholders left by the surface parser, filled in by elaboration.
inline const SortName kUnknownSort = "";
inline constexpr Level kUnknownLevel = std::numeric_limits<Level>::max();

struct Term;
using TermP = std::shared_ptr<const Term>;

// A binder annotation: the bound type together with its sort and level.
// `name` is a display hint only; it never takes part in equality.
struct Binder {
  TermP type;
  SortName sort;
  Level level = 0;
  std::string name;
};

struct Var {
  std::uint32_t index;
};
struct Lam {
  Binder dom;
  TermP body;
};
struct App {
  TermP fn;
  TermP arg;
};
struct Pi {
  Binder dom;
  TermP cod;
};
struct Univ {
  SortName sort;
  Level level;
};
struct Inert {
  std::string name;
  std::vector<TermP> args;
};
struct Active {
  std::string name;
  std::vector<TermP> params;
  TermP scrut;
};

using TermNode = std::variant<Var, Lam, App, Pi, Univ, Inert, Active>;

struct Term {
  TermNode node;
  // One past the largest free de Bruijn index (0 for closed terms).
  std::uint32_t fv = 0;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
};

using Context = std::vector<Binder>;
using Subst = std::vector<TermP>;

TermP mk_var(std::uint32_t i);
TermP mk_lam(Binder dom, TermP body);
TermP mk_app(TermP fn, TermP arg);
TermP mk_apps(TermP fn, const std::vector<TermP>& args);
TermP mk_pi(Binder dom, TermP cod);
TermP mk_arrow(Binder dom, TermP cod);  // non-dependent: shifts cod under the binder
TermP mk_univ(SortName sort, Level level);
TermP mk_inert(std::string name, std::vector<TermP> args = {});
TermP mk_active(std::string name, std::vector<TermP> params, TermP scrut);

// Moves every free index >= cutoff by `amount`. Aborts on underflow.
TermP shift(const TermP& t, std::int64_t amount, std::uint32_t cutoff = 0);

// `t` lives in Γ·Δ with |Δ| = sub.size(); sub[k] lives in Γ and replaces the
// k-th entry of Δ (so the last entry replaces Var(0)). Indices past Δ move
// down by |Δ|.
TermP subst_apply(const TermP& t, const Subst& sub);
TermP subst1(const TermP& t, const TermP& u);
Subst subst_compose(const Subst& sigma, const Subst& rho);  // σ[ρ]
Subst shift_subst(const Subst& s, std::int64_t amount, std::uint32_t cutoff = 0);
Subst id_subst(std::uint32_t n);

bool alpha_eq(const TermP& t, const TermP& u);
bool subst_eq(const Subst& a, const Subst& b);
bool binder_eq(const Binder& a, const Binder& b);
bool context_eq(const Context& a, const Context& b);

// Type of Var(i) in ctx, weakened to live in ctx.
Binder ctx_lookup(const Context& ctx, std::uint32_t i);

// Closes a context into a right-nested Pi over `body`.
TermP pi_telescope(const Context& tel, TermP body);

bool occurs_free(const TermP& t, std::uint32_t i);

// Exact structural dump (binder hints included); used for bit-identity checks.
std::string debug_string(const TermP& t);

}  // namespace mutt
