#include "mutt/linearizable.hpp"

#include <algorithm>

#include "mutt/reduction.hpp"

namespace mutt {

namespace {

bool mentions_below(const TermP& t, std::uint32_t depth, std::uint32_t under = 0) {
  if (t->fv <= under) return false;
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        auto any = [&](const std::vector<TermP>& ts) {
          return std::any_of(ts.begin(), ts.end(),
                             [&](const TermP& x) { return mentions_below(x, depth, under); });
        };
        if constexpr (std::is_same_v<N, Var>) {
          return n.index >= under && n.index - under < depth;
        } else if constexpr (std::is_same_v<N, Lam>) {
          return mentions_below(n.dom.type, depth, under) || mentions_below(n.body, depth, under + 1);
        } else if constexpr (std::is_same_v<N, Pi>) {
          return mentions_below(n.dom.type, depth, under) || mentions_below(n.cod, depth, under + 1);
        } else if constexpr (std::is_same_v<N, App>) {
          return mentions_below(n.fn, depth, under) || mentions_below(n.arg, depth, under);
        } else if constexpr (std::is_same_v<N, Univ>) {
          return false;
        } else if constexpr (std::is_same_v<N, Inert>) {
          return any(n.args);
        } else {
          return any(n.params) || mentions_below(n.scrut, depth, under);
        }
      },
      t->node);
}

}  // namespace

TermP Unifier::walk(const TermP& t, std::uint32_t depth) const {
  TermP cur = t;
  for (;;) {
    const auto* v = cur->as<Var>();
    if (!v || v->index < depth) return cur;
    const auto& b = binding_[v->index - depth];
    if (!b) return cur;
    cur = shift(b, depth);
  }
}

TermP Unifier::resolve(const TermP& t) const {
  const auto n = static_cast<std::uint32_t>(binding_.size());
  Subst s(n);
  for (std::uint32_t p = 0; p < n; ++p) {
    const auto& b = binding_[n - 1 - p];
    s[p] = b ? b : mk_var(n - 1 - p);
  }
  TermP cur = t;
  for (std::uint32_t i = 0; i <= n; ++i) {
    TermP next = subst_apply(cur, s);
    if (alpha_eq(next, cur)) return cur;
    cur = next;
  }
  return cur;
}

bool Unifier::bind(std::uint32_t var, const TermP& t, std::uint32_t depth) {
  if (mentions_below(t, depth)) return false;
  TermP lowered = shift(t, -static_cast<std::int64_t>(depth));
  TermP r = resolve(lowered);
  if (const auto* v = r->as<Var>(); v && v->index == var) return true;
  if (occurs_free(r, var)) return false;
  binding_[var] = lowered;
  return true;
}

bool Unifier::unify(const TermP& a, const TermP& b) { return unify_at(a, b, 0); }

bool Unifier::unify_at(const TermP& a0, const TermP& b0, std::uint32_t depth) {
  TermP a = walk(a0, depth);
  TermP b = walk(b0, depth);
  const auto* va = a->as<Var>();
  const auto* vb = b->as<Var>();
  if (va && vb && va->index == vb->index) return true;
  if (va && va->index >= depth) return bind(va->index - depth, b, depth);
  if (vb && vb->index >= depth) return bind(vb->index - depth, a, depth);
  if (a->node.index() != b->node.index()) return false;
  if (va) return false;  // distinct rigid variables
  if (const auto* x = a->as<Univ>()) {
    const auto& y = std::get<Univ>(b->node);
    return x->sort == y.sort && x->level == y.level;
  }
  if (const auto* x = a->as<App>()) {
    const auto& y = std::get<App>(b->node);
    return unify_at(x->fn, y.fn, depth) && unify_at(x->arg, y.arg, depth);
  }
  if (const auto* x = a->as<Pi>()) {
    const auto& y = std::get<Pi>(b->node);
    return x->dom.sort == y.dom.sort && x->dom.level == y.dom.level &&
           unify_at(x->dom.type, y.dom.type, depth) && unify_at(x->cod, y.cod, depth + 1);
  }
  if (const auto* x = a->as<Lam>()) {
    const auto& y = std::get<Lam>(b->node);
    return unify_at(x->dom.type, y.dom.type, depth) && unify_at(x->body, y.body, depth + 1);
  }
  auto list = [&](const std::vector<TermP>& p, const std::vector<TermP>& q) {
    if (p.size() != q.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (!unify_at(p[i], q[i], depth)) return false;
    return true;
  };
  if (const auto* x = a->as<Inert>()) {
    const auto& y = std::get<Inert>(b->node);
    return x->name == y.name && list(x->args, y.args);
  }
  const auto& x = std::get<Active>(a->node);
  const auto& y = std::get<Active>(b->node);
  return x.name == y.name && list(x.params, y.params) && unify_at(x.scrut, y.scrut, depth);
}

void check_linearizable_or_throw(const Signature& sig, const RewriteRule& rule) {
  const auto n = static_cast<std::uint32_t>(rule.delta_lin.size());
  const auto* d = sig.decl(rule.head);
  if (!d || d->dom.size() != 1) throw KernelError(tag::kRuleHead, "unknown active constant " + rule.head);

  // (a)
  std::vector<int> count(n, 0);
  auto note = [&](const TermP& t) {
    const auto* v = t->as<Var>();
    if (!v || v->index >= n) throw KernelError(tag::kLinearA, "parameter position is not a variable of the linear context");
    ++count[v->index];
  };
  for (const auto& x : rule.param_vars) note(x);
  if (const auto* h = std::get_if<HeadPat>(&rule.pat)) {
    for (const auto& q : h->args) note(mk_var(q.var));
  } else {
    const auto& p = std::get<PiPat>(rule.pat);
    note(mk_var(p.dom.var));
    note(mk_var(p.cod.var));
  }
  for (std::uint32_t k = 0; k < n; ++k) {
    if (count[k] != 1) {
      const auto& name = rule.delta_lin[n - 1 - k].name;
      throw KernelError(tag::kLinearA, "variable `" + name + "` of the linear context occurs " +
                                           std::to_string(count[k]) +
                                           " times in the left-hand side (expected exactly once)");
    }
  }

  const TermP& dom = d->scrutinee().type;
  // (b)
  if (dom->is<Univ>()) {
    if (!context_eq(rule.delta, rule.delta_lin) || !subst_eq(rule.renaming, id_subst(n)))
      throw KernelError(tag::kLinearB, "rule for " + rule.head +
                                           " eliminates a universe but is not linear");
    return;
  }

  // (b')
  const auto* k_d = dom->as<Inert>();
  const auto* h = std::get_if<HeadPat>(&rule.pat);
  if (!k_d || !h) throw KernelError(tag::kLinearB2, "domain and pattern heads do not form a K(u) / c(q) pair");
  const auto* c = sig.decl(h->name);
  const auto* k_c = c && c->cod ? c->cod->as<Inert>() : nullptr;
  if (!k_c || k_c->name != k_d->name)
    throw KernelError(tag::kLinearB2, "pattern head " + h->name + " does not build " + k_d->name);

  Subst erased;
  for (const auto& q : h->args) erased.push_back(mk_var(q.var));
  Unifier u(n);
  for (std::size_t i = 0; i < k_c->args.size() && i < k_d->args.size(); ++i) {
    TermP lhs = subst_apply(k_c->args[i], erased);
    TermP rhs = subst_apply(k_d->args[i], rule.param_vars);
    if (!u.unify(lhs, rhs))
      throw KernelError(tag::kLinearB2, "indices of the pattern do not unify with dom(" + rule.head + ")");
  }
  if (k_c->args.size() != k_d->args.size())
    throw KernelError(tag::kLinearB2, "index arity mismatch between pattern and domain");

  auto tau = rule.tau ? rule.tau : canonical_inverse(rule);
  if (!tau)
    throw KernelError(tag::kLinearB2, "the renaming has no inverse: some variable of the "
                                      "non-linear context is not the image of any linear variable");
  const auto nd = static_cast<std::uint32_t>(rule.delta.size());
  if (tau->size() != nd) throw KernelError(tag::kLinearB2, "tau has the wrong length");
  for (const auto& t : *tau) {
    const auto* v = t->as<Var>();
    if (!v || v->index >= n) throw KernelError(tag::kLinearB2, "tau must list variables of the linear context");
  }
  if (!subst_eq(subst_compose(*tau, rule.renaming), id_subst(nd)))
    throw KernelError(tag::kLinearB2, "tau[s] is not the identity of the non-linear context");
  Subst back = subst_compose(rule.renaming, *tau);
  Subst id = id_subst(n);
  for (std::uint32_t p = 0; p < n; ++p) {
    if (!alpha_eq(u.resolve(back[p]), u.resolve(id[p])))
      throw KernelError(tag::kLinearB2, "s[tau] differs from the identity on `" +
                                            rule.delta_lin[p].name +
                                            "` even after unifying the indices");
  }
}

bool check_linearizable(const Signature& sig, const RewriteRule& rule, Diagnostics* out) {
  try {
    check_linearizable_or_throw(sig, rule);
    return true;
  } catch (const KernelError& e) {
    if (out) out->push_back(Diagnostic{Severity::Error, e.tag(), e.what(), {}, std::nullopt});
    return false;
  }
}

}  // namespace mutt
