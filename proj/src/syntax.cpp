#include "mutt/syntax.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace mutt {

namespace {

std::uint32_t under(std::uint32_t fv) { return fv == 0 ? 0 : fv - 1; }

std::uint32_t fv_of(const TermP& t) { return t ? t->fv : 0; }

std::uint32_t fv_of(const std::vector<TermP>& ts) {
  std::uint32_t m = 0;
  for (const auto& t : ts) m = std::max(m, fv_of(t));
  return m;
}

TermP make(TermNode n, std::uint32_t fv) {
  return std::make_shared<const Term>(Term{std::move(n), fv});
}

template <class F>
std::vector<TermP> map_terms(const std::vector<TermP>& ts, F&& f, bool& changed) {
  std::vector<TermP> out;
  out.reserve(ts.size());
  for (const auto& t : ts) {
    out.push_back(f(t));
    if (out.back() != t) changed = true;
  }
  return out;
}

TermP shift_rec(const TermP& t, std::int64_t d, std::uint32_t cutoff) {
  if (t->fv <= cutoff) return t;
  return std::visit(
      [&](const auto& n) -> TermP {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var>) {
          std::int64_t j = static_cast<std::int64_t>(n.index) + d;
          if (j < 0) {
            std::cerr << "mutt: internal error: de Bruijn index underflow\n";
            std::abort();
          }
          return mk_var(static_cast<std::uint32_t>(j));
        } else if constexpr (std::is_same_v<N, Lam>) {
          Binder b = n.dom;
          b.type = shift_rec(b.type, d, cutoff);
          return mk_lam(std::move(b), shift_rec(n.body, d, cutoff + 1));
        } else if constexpr (std::is_same_v<N, App>) {
          return mk_app(shift_rec(n.fn, d, cutoff), shift_rec(n.arg, d, cutoff));
        } else if constexpr (std::is_same_v<N, Pi>) {
          Binder b = n.dom;
          b.type = shift_rec(b.type, d, cutoff);
          return mk_pi(std::move(b), shift_rec(n.cod, d, cutoff + 1));
        } else if constexpr (std::is_same_v<N, Univ>) {
          return t;
        } else if constexpr (std::is_same_v<N, Inert>) {
          bool ch = false;
          auto args = map_terms(n.args, [&](const TermP& a) { return shift_rec(a, d, cutoff); }, ch);
          return mk_inert(n.name, std::move(args));
        } else {
          bool ch = false;
          auto ps = map_terms(n.params, [&](const TermP& a) { return shift_rec(a, d, cutoff); }, ch);
          return mk_active(n.name, std::move(ps), shift_rec(n.scrut, d, cutoff));
        }
      },
      t->node);
}

struct Substituter {
  const Subst& sub;
  std::uint32_t n;

  TermP go(const TermP& t, std::uint32_t depth) const {
    if (t->fv <= depth) return t;
    return std::visit(
        [&](const auto& x) -> TermP {
          using N = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<N, Var>) {
            if (x.index < depth) return t;
            std::uint32_t k = x.index - depth;
            if (k < n) return shift(sub[n - 1 - k], depth, 0);
            return mk_var(x.index - n);
          } else if constexpr (std::is_same_v<N, Lam>) {
            Binder b = x.dom;
            b.type = go(b.type, depth);
            return mk_lam(std::move(b), go(x.body, depth + 1));
          } else if constexpr (std::is_same_v<N, App>) {
            return mk_app(go(x.fn, depth), go(x.arg, depth));
          } else if constexpr (std::is_same_v<N, Pi>) {
            Binder b = x.dom;
            b.type = go(b.type, depth);
            return mk_pi(std::move(b), go(x.cod, depth + 1));
          } else if constexpr (std::is_same_v<N, Univ>) {
            return t;
          } else if constexpr (std::is_same_v<N, Inert>) {
            bool ch = false;
            auto args = map_terms(x.args, [&](const TermP& a) { return go(a, depth); }, ch);
            return mk_inert(x.name, std::move(args));
          } else {
            bool ch = false;
            auto ps = map_terms(x.params, [&](const TermP& a) { return go(a, depth); }, ch);
            return mk_active(x.name, std::move(ps), go(x.scrut, depth));
          }
        },
        t->node);
  }
};

bool eq_list(const std::vector<TermP>& a, const std::vector<TermP>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!alpha_eq(a[i], b[i])) return false;
  return true;
}

void dump(std::ostream& os, const TermP& t) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        auto binder = [&](const Binder& b) {
          os << b.name << ":";
          dump(os, b.type);
          os << "@" << b.sort << "#" << b.level;
        };
        if constexpr (std::is_same_v<N, Var>) {
          os << "#" << n.index;
        } else if constexpr (std::is_same_v<N, Lam>) {
          os << "(lam ";
          binder(n.dom);
          os << " ";
          dump(os, n.body);
          os << ")";
        } else if constexpr (std::is_same_v<N, App>) {
          os << "(app ";
          dump(os, n.fn);
          os << " ";
          dump(os, n.arg);
          os << ")";
        } else if constexpr (std::is_same_v<N, Pi>) {
          os << "(pi ";
          binder(n.dom);
          os << " ";
          dump(os, n.cod);
          os << ")";
        } else if constexpr (std::is_same_v<N, Univ>) {
          os << "(U " << n.sort << " " << n.level << ")";
        } else if constexpr (std::is_same_v<N, Inert>) {
          os << "(" << n.name;
          for (const auto& a : n.args) {
            os << " ";
            dump(os, a);
          }
          os << ")";
        } else {
          os << "(" << n.name << "!";
          for (const auto& a : n.params) {
            os << " ";
            dump(os, a);
          }
          os << " ; ";
          dump(os, n.scrut);
          os << ")";
        }
      },
      t->node);
}

}  // namespace

TermP mk_var(std::uint32_t i) { return make(Var{i}, i + 1); }

TermP mk_lam(Binder dom, TermP body) {
  auto fv = std::max(fv_of(dom.type), under(body->fv));
  return make(Lam{std::move(dom), std::move(body)}, fv);
}

TermP mk_app(TermP fn, TermP arg) {
  auto fv = std::max(fn->fv, arg->fv);
  return make(App{std::move(fn), std::move(arg)}, fv);
}

TermP mk_apps(TermP fn, const std::vector<TermP>& args) {
  for (const auto& a : args) fn = mk_app(std::move(fn), a);
  return fn;
}

TermP mk_pi(Binder dom, TermP cod) {
  auto fv = std::max(fv_of(dom.type), under(cod->fv));
  return make(Pi{std::move(dom), std::move(cod)}, fv);
}

TermP mk_arrow(Binder dom, TermP cod) { return mk_pi(std::move(dom), shift(cod, 1)); }

TermP mk_univ(SortName sort, Level level) { return make(Univ{std::move(sort), level}, 0); }

TermP mk_inert(std::string name, std::vector<TermP> args) {
  auto fv = fv_of(args);
  return make(Inert{std::move(name), std::move(args)}, fv);
}

TermP mk_active(std::string name, std::vector<TermP> params, TermP scrut) {
  auto fv = std::max(fv_of(params), scrut->fv);
  return make(Active{std::move(name), std::move(params), std::move(scrut)}, fv);
}

TermP shift(const TermP& t, std::int64_t amount, std::uint32_t cutoff) {
  if (amount == 0) return t;
  return shift_rec(t, amount, cutoff);
}

TermP subst_apply(const TermP& t, const Subst& sub) {
  if (sub.empty()) return t;
  Substituter s{sub, static_cast<std::uint32_t>(sub.size())};
  return s.go(t, 0);
}

TermP subst1(const TermP& t, const TermP& u) { return subst_apply(t, Subst{u}); }

Subst subst_compose(const Subst& sigma, const Subst& rho) {
  Subst out;
  out.reserve(sigma.size());
  for (const auto& t : sigma) out.push_back(subst_apply(t, rho));
  return out;
}

Subst shift_subst(const Subst& s, std::int64_t amount, std::uint32_t cutoff) {
  Subst out;
  out.reserve(s.size());
  for (const auto& t : s) out.push_back(shift(t, amount, cutoff));
  return out;
}

Subst id_subst(std::uint32_t n) {
  Subst out;
  out.reserve(n);
  for (std::uint32_t k = 0; k < n; ++k) out.push_back(mk_var(n - 1 - k));
  return out;
}

bool binder_eq(const Binder& a, const Binder& b) {
  return a.sort == b.sort && a.level == b.level && alpha_eq(a.type, b.type);
}

bool alpha_eq(const TermP& t, const TermP& u) {
  if (t == u) return true;
  if (t->fv != u->fv || t->node.index() != u->node.index()) return false;
  return std::visit(
      [&](const auto& a) -> bool {
        using N = std::decay_t<decltype(a)>;
        const auto& b = std::get<N>(u->node);
        if constexpr (std::is_same_v<N, Var>) {
          return a.index == b.index;
        } else if constexpr (std::is_same_v<N, Lam>) {
          return binder_eq(a.dom, b.dom) && alpha_eq(a.body, b.body);
        } else if constexpr (std::is_same_v<N, App>) {
          return alpha_eq(a.fn, b.fn) && alpha_eq(a.arg, b.arg);
        } else if constexpr (std::is_same_v<N, Pi>) {
          return binder_eq(a.dom, b.dom) && alpha_eq(a.cod, b.cod);
        } else if constexpr (std::is_same_v<N, Univ>) {
          return a.sort == b.sort && a.level == b.level;
        } else if constexpr (std::is_same_v<N, Inert>) {
          return a.name == b.name && eq_list(a.args, b.args);
        } else {
          return a.name == b.name && eq_list(a.params, b.params) && alpha_eq(a.scrut, b.scrut);
        }
      },
      t->node);
}

bool subst_eq(const Subst& a, const Subst& b) { return eq_list(a, b); }

bool context_eq(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!binder_eq(a[i], b[i])) return false;
  return true;
}

Binder ctx_lookup(const Context& ctx, std::uint32_t i) {
  Binder b = ctx[ctx.size() - 1 - i];
  b.type = shift(b.type, static_cast<std::int64_t>(i) + 1);
  return b;
}

TermP pi_telescope(const Context& tel, TermP body) {
  for (auto it = tel.rbegin(); it != tel.rend(); ++it) body = mk_pi(*it, std::move(body));
  return body;
}

bool occurs_free(const TermP& t, std::uint32_t i) {
  if (t->fv <= i) return false;
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var>) {
          return n.index == i;
        } else if constexpr (std::is_same_v<N, Lam>) {
          return occurs_free(n.dom.type, i) || occurs_free(n.body, i + 1);
        } else if constexpr (std::is_same_v<N, App>) {
          return occurs_free(n.fn, i) || occurs_free(n.arg, i);
        } else if constexpr (std::is_same_v<N, Pi>) {
          return occurs_free(n.dom.type, i) || occurs_free(n.cod, i + 1);
        } else if constexpr (std::is_same_v<N, Univ>) {
          return false;
        } else if constexpr (std::is_same_v<N, Inert>) {
          return std::any_of(n.args.begin(), n.args.end(),
                             [&](const TermP& a) { return occurs_free(a, i); });
        } else {
          return occurs_free(n.scrut, i) ||
                 std::any_of(n.params.begin(), n.params.end(),
                             [&](const TermP& a) { return occurs_free(a, i); });
        }
      },
      t->node);
}

std::string debug_string(const TermP& t) {
  std::ostringstream os;
  dump(os, t);
  return os.str();
}

}  // namespace mutt
