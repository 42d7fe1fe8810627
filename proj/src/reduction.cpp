#include "mutt/reduction.hpp"

#include <algorithm>

namespace mutt {

FuelExhausted::FuelExhausted(std::uint64_t budget)
    : KernelError(tag::kFuel, "reduction budget of " + std::to_string(budget) +
                                  " head steps exhausted") {}

void Fuel::tick() {
  if (++used_ > budget_) throw FuelExhausted(budget_);
}

namespace {

TermP mv(const MetaVar& q) { return mk_var(q.var); }

std::string hint(const Context* names, std::uint32_t var) {
  if (!names || var >= names->size()) return "z^rec";
  return (*names)[names->size() - 1 - var].name + "^rec";
}

Subst with_last(Subst s, TermP last) {
  s.push_back(std::move(last));
  return s;
}

}  // namespace

std::optional<std::string> scrutinee_head(const TermP& w) {
  if (const auto* i = w->as<Inert>()) return i->name;
  if (w->is<Pi>()) return kPiHead;
  return std::nullopt;
}

Classification classify(const Signature& sig, const TermP& t) {
  if (t->is<Lam>()) return {WhnfKind::Canonical, "lambda"};
  if (t->is<Pi>()) return {WhnfKind::Canonical, kPiHead};
  if (t->is<Univ>()) return {WhnfKind::Canonical, "Univ"};
  if (const auto* i = t->as<Inert>()) return {WhnfKind::Canonical, i->name};
  if (t->is<Var>()) return {WhnfKind::Neutral, ""};
  if (const auto* a = t->as<App>()) {
    if (a->fn->is<Lam>()) return {WhnfKind::Redex, "beta"};
    auto c = classify(sig, a->fn);
    if (c.kind == WhnfKind::Redex) return {WhnfKind::Redex, "app-subs"};
    return {WhnfKind::Neutral, ""};
  }
  const auto& act = std::get<Active>(t->node);
  auto c = classify(sig, act.scrut);
  if (c.kind == WhnfKind::Redex) return {WhnfKind::Redex, "active-subs"};
  if (c.kind == WhnfKind::Neutral) return {WhnfKind::Neutral, ""};
  auto head = scrutinee_head(act.scrut);
  if (head && sig.rule_for(act.name, *head)) return {WhnfKind::Redex, "rewrite"};
  return {WhnfKind::Neutral, ""};
}

TermP erase_pattern(const Pattern& pat) {
  if (const auto* h = std::get_if<HeadPat>(&pat)) {
    std::vector<TermP> args;
    args.reserve(h->args.size());
    for (const auto& q : h->args) args.push_back(mv(q));
    return mk_inert(h->name, std::move(args));
  }
  const auto& p = std::get<PiPat>(pat);
  Binder b{mv(p.dom), p.sort, p.level, "y"};
  return mk_pi(std::move(b), mk_app(shift(mv(p.cod), 1), mk_var(0)));
}

Context occ_rec(const ConstantDecl& d, const Pattern& pat, const Context* names) {
  Context out;
  auto plain = [&](const MetaVar& q) {
    if (!q.rec) return;
    out.push_back(Binder{subst_apply(d.cod, with_last(*q.rec, mv(q))), d.codsort, d.codlevel,
                         hint(names, q.var)});
  };
  if (const auto* h = std::get_if<HeadPat>(&pat)) {
    for (const auto& q : h->args) plain(q);
    return out;
  }
  const auto& p = std::get<PiPat>(pat);
  plain(p.dom);
  if (p.cod.rec) {
    Subst s = shift_subst(*p.cod.rec, 1);
    TermP body = subst_apply(d.cod, with_last(std::move(s), mk_app(shift(mv(p.cod), 1), mk_var(0))));
    Binder y{mv(p.dom), p.sort, p.level, "y"};
    out.push_back(Binder{mk_pi(std::move(y), std::move(body)), d.codsort,
                         std::max(p.level, d.codlevel), hint(names, p.cod.var)});
  }
  return out;
}

Subst occ_rec_sub(const std::string& d, const Pattern& pat) {
  Subst out;
  auto plain = [&](const MetaVar& q) {
    if (q.rec) out.push_back(mk_active(d, *q.rec, mv(q)));
  };
  if (const auto* h = std::get_if<HeadPat>(&pat)) {
    for (const auto& q : h->args) plain(q);
    return out;
  }
  const auto& p = std::get<PiPat>(pat);
  plain(p.dom);
  if (p.cod.rec) {
    Binder y{mv(p.dom), p.sort, p.level, "y"};
    out.push_back(mk_lam(std::move(y), mk_active(d, shift_subst(*p.cod.rec, 1),
                                                 mk_app(shift(mv(p.cod), 1), mk_var(0)))));
  }
  return out;
}

std::optional<Subst> match_pattern(const RewriteRule& rule, const std::vector<TermP>& params,
                                   const TermP& scrut) {
  const auto n = static_cast<std::uint32_t>(rule.delta_lin.size());
  if (params.size() != rule.param_vars.size()) return std::nullopt;
  Subst slots(n);
  auto assign = [&](const TermP& var, const TermP& value) {
    const auto* v = var->as<Var>();
    if (!v || v->index >= n) return false;
    auto& slot = slots[n - 1 - v->index];
    if (slot) return alpha_eq(slot, value);
    slot = value;
    return true;
  };
  for (std::size_t k = 0; k < params.size(); ++k)
    if (!assign(rule.param_vars[k], params[k])) return std::nullopt;

  if (const auto* h = std::get_if<HeadPat>(&rule.pat)) {
    const auto* in = scrut->as<Inert>();
    if (!in || in->name != h->name || in->args.size() != h->args.size()) return std::nullopt;
    for (std::size_t k = 0; k < h->args.size(); ++k)
      if (!assign(mv(h->args[k]), in->args[k])) return std::nullopt;
  } else {
    const auto& p = std::get<PiPat>(rule.pat);
    const auto* pi = scrut->as<Pi>();
    if (!pi) return std::nullopt;
    if (!assign(mv(p.dom), pi->dom.type)) return std::nullopt;
    if (!assign(mv(p.cod), mk_lam(pi->dom, pi->cod))) return std::nullopt;
  }
  for (const auto& s : slots)
    if (!s) return std::nullopt;
  return slots;
}

std::optional<TermP> fire(const Signature& sig, const std::string& d,
                          const std::vector<TermP>& params, const TermP& scrut) {
  auto head = scrutinee_head(scrut);
  if (!head) return std::nullopt;
  const auto* ir = sig.rule_for(d, *head);
  if (!ir || !ir->inverse) return std::nullopt;
  const RewriteRule& rule = *ir->rule;
  auto sigma = match_pattern(rule, params, scrut);
  if (!sigma) return std::nullopt;

  Pattern pat = rule.pat;
  if (auto* p = std::get_if<PiPat>(&pat)) {
    // The pattern is a schema over the domain sort; reuse the matched one.
    const auto& b = scrut->as<Pi>()->dom;
    p->sort = b.sort;
    p->level = b.level;
  }
  Subst full = subst_compose(*ir->inverse, *sigma);
  for (auto& t : subst_compose(occ_rec_sub(d, pat), *sigma)) full.push_back(std::move(t));
  return subst_apply(rule.rhs, full);
}

TermP whnf(const Signature& sig, const TermP& t0, Fuel& fuel) {
  TermP t = t0;
  for (;;) {
    if (const auto* a = t->as<App>()) {
      TermP f = whnf(sig, a->fn, fuel);
      if (const auto* lam = f->as<Lam>()) {
        fuel.tick();
        t = subst1(lam->body, a->arg);
        continue;
      }
      return f == a->fn ? t : mk_app(f, a->arg);
    }
    if (const auto* act = t->as<Active>()) {
      TermP s = whnf(sig, act->scrut, fuel);
      if (auto r = fire(sig, act->name, act->params, s)) {
        fuel.tick();
        t = *r;
        continue;
      }
      return s == act->scrut ? t : mk_active(act->name, act->params, s);
    }
    return t;
  }
}

TermP whnf(const Signature& sig, const TermP& t) {
  Fuel f;
  return whnf(sig, t, f);
}

TermP normalize(const Signature& sig, const TermP& t, Fuel& fuel) {
  TermP w = whnf(sig, t, fuel);
  auto norm = [&](const TermP& x) { return normalize(sig, x, fuel); };
  auto norm_binder = [&](Binder b) {
    b.type = norm(b.type);
    return b;
  };
  return std::visit(
      [&](const auto& n) -> TermP {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var> || std::is_same_v<N, Univ>) {
          return w;
        } else if constexpr (std::is_same_v<N, Lam>) {
          return mk_lam(norm_binder(n.dom), norm(n.body));
        } else if constexpr (std::is_same_v<N, Pi>) {
          return mk_pi(norm_binder(n.dom), norm(n.cod));
        } else if constexpr (std::is_same_v<N, App>) {
          return mk_app(norm(n.fn), norm(n.arg));
        } else if constexpr (std::is_same_v<N, Inert>) {
          std::vector<TermP> args;
          for (const auto& x : n.args) args.push_back(norm(x));
          return mk_inert(n.name, std::move(args));
        } else {
          std::vector<TermP> ps;
          for (const auto& x : n.params) ps.push_back(norm(x));
          return mk_active(n.name, std::move(ps), norm(n.scrut));
        }
      },
      w->node);
}

TermP normalize(const Signature& sig, const TermP& t) {
  Fuel f;
  return normalize(sig, t, f);
}

}  // namespace mutt
