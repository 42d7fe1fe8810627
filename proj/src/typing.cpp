#include "mutt/typing.hpp"

#include <algorithm>

#include "mutt/linearizable.hpp"
#include "mutt/printer.hpp"

namespace mutt {

namespace {

Context extend(Context ctx, const Binder& b) {
  ctx.push_back(b);
  return ctx;
}

std::string show(const Context& ctx, const TermP& t) { return print_term(t, context_names(ctx)); }

[[noreturn]] void retag(const KernelError& e, const char* t, const std::string& prefix) {
  if (e.tag() == tag::kFuel) throw;
  throw KernelError(t, prefix + ": " + e.what() + " [" + e.tag() + "]");
}

}  // namespace

Typer::Typer(const Parametrization& p, ConversionOptions opts, std::uint64_t fuel)
    : p_(p), sig_(p.sig), opts_(std::move(opts)), fuel_(fuel) {}

TermP Typer::whnf(const TermP& t) { return mutt::whnf(sig_, t, fuel_); }

bool Typer::convertible_types(const Context& ctx, const TermP& a, const TermP& b) {
  return conv_type(sig_, ctx, a, b, opts_, fuel_);
}

void Typer::mismatch(const Context& ctx, const TermP& got, const TermP& expected,
                     const std::string& what) {
  TermP g = whnf(got);
  TermP e = whnf(expected);
  const auto* ug = g->as<Univ>();
  const auto* ue = e->as<Univ>();
  if (ug && ue && ug->sort != ue->sort)
    throw KernelError(tag::kSortMismatch, what + " has type " + show(ctx, got) + " but " +
                                              show(ctx, expected) + " was expected (universes of sort " +
                                              ug->sort + " and " + ue->sort + " are distinct)");
  if (ug && ue && ug->level != ue->level)
    throw KernelError(tag::kLevelMismatch, what + " has type " + show(ctx, got) + " but " +
                                               show(ctx, expected) + " was expected");
  throw KernelError(tag::kTypeMismatch, what + " has type " + show(ctx, got) + " but " +
                                            show(ctx, expected) + " was expected");
}

std::pair<SortName, Level> Typer::infer_type(const Context& ctx, const TermP& a) {
  auto r = infer(ctx, a);
  TermP t = whnf(r.type);
  const auto* u = t->as<Univ>();
  if (!u) throw KernelError(tag::kNotAType, show(ctx, a) + " is not a type (its type is " + show(ctx, r.type) + ")");
  return {u->sort, u->level};
}

void Typer::check_type(const Context& ctx, const TermP& a, const SortName& sort, Level level) {
  if (!p_.has_sort(sort)) throw KernelError(tag::kSortTable, "unknown sort " + sort);
  auto [s, l] = infer_type(ctx, a);
  if (s != sort)
    throw KernelError(tag::kSortMismatch, show(ctx, a) + " is a type of sort " + s + ", not " + sort);
  if (l != level)
    throw KernelError(tag::kLevelMismatch, show(ctx, a) + " lives at level " + std::to_string(l) +
                                               ", not " + std::to_string(level));
}

void Typer::check_binder(const Context& ctx, const Binder& b) { check_type(ctx, b.type, b.sort, b.level); }

void Typer::check_context(const Context& ctx) {
  Context prefix;
  for (const auto& b : ctx) {
    try {
      check_binder(prefix, b);
    } catch (const KernelError& e) {
      if (e.tag() == tag::kFuel) throw;
      throw KernelError(e.tag(), "in the type of `" + b.name + "`: " + e.what());
    }
    prefix.push_back(b);
  }
}

void Typer::check_substitution(const Context& ctx, const Subst& sub, const Context& target) {
  if (sub.size() != target.size())
    throw KernelError(tag::kArity, "expected " + std::to_string(target.size()) + " arguments, got " +
                                       std::to_string(sub.size()));
  Subst prefix;
  for (std::size_t k = 0; k < sub.size(); ++k) {
    check(ctx, sub[k], subst_apply(target[k].type, prefix), target[k].sort);
    prefix.push_back(sub[k]);
  }
}

TypingResult Typer::infer(const Context& ctx, const TermP& t) {
  if (const auto* v = t->as<Var>()) {
    if (v->index >= ctx.size())
      throw KernelError(tag::kUnbound, "variable index " + std::to_string(v->index) +
                                           " is out of scope");
    auto b = ctx_lookup(ctx, v->index);
    return {b.type, b.sort, b.level};
  }
  if (const auto* u = t->as<Univ>()) {
    if (!p_.has_sort(u->sort)) throw KernelError(tag::kSortTable, "unknown sort " + u->sort);
    return {mk_univ(kTypeSort, u->level + 1), kTypeSort, u->level + 2};
  }
  if (const auto* pi = t->as<Pi>()) {
    check_binder(ctx, pi->dom);
    auto [s2, j] = infer_type(extend(ctx, pi->dom), pi->cod);
    Level l = std::max(pi->dom.level, j);
    return {mk_univ(s2, l), kTypeSort, l + 1};
  }
  if (const auto* lam = t->as<Lam>()) {
    check_binder(ctx, lam->dom);
    auto r = infer(extend(ctx, lam->dom), lam->body);
    return {mk_pi(lam->dom, r.type), r.sort, std::max(lam->dom.level, r.level)};
  }
  if (const auto* app = t->as<App>()) {
    auto r = infer(ctx, app->fn);
    TermP T = whnf(r.type);
    const auto* pi = T->as<Pi>();
    if (!pi)
      throw KernelError(tag::kNotAFunction, show(ctx, app->fn) + " is applied but has type " +
                                                show(ctx, r.type));
    check(ctx, app->arg, pi->dom.type, pi->dom.sort);
    auto [s2, j] = infer_type(extend(ctx, pi->dom), pi->cod);
    return {subst1(pi->cod, app->arg), s2, j};
  }
  if (const auto* in = t->as<Inert>()) {
    const auto* d = sig_.decl(in->name);
    if (!d) throw KernelError(tag::kScope, "unknown constant " + in->name);
    if (!is_inert(d->kind)) throw KernelError(tag::kArity, in->name + " is active but used as inert");
    Context tel = d->params;
    tel.insert(tel.end(), d->dom.begin(), d->dom.end());
    if (in->args.size() != tel.size())
      throw KernelError(tag::kArity, in->name + " expects " + std::to_string(tel.size()) +
                                         " arguments, got " + std::to_string(in->args.size()));
    check_substitution(ctx, in->args, tel);
    return {subst_apply(d->cod, in->args), d->codsort, d->codlevel};
  }
  const auto& act = std::get<Active>(t->node);
  const auto* d = sig_.decl(act.name);
  if (!d) throw KernelError(tag::kScope, "unknown constant " + act.name);
  if (is_inert(d->kind) || d->dom.size() != 1)
    throw KernelError(tag::kArity, act.name + " is inert but used as active");
  if (act.params.size() != d->params.size())
    throw KernelError(tag::kArity, act.name + " expects " + std::to_string(d->params.size()) +
                                       " parameters, got " + std::to_string(act.params.size()));
  check_substitution(ctx, act.params, d->params);
  check(ctx, act.scrut, subst_apply(d->scrutinee().type, act.params), d->scrutinee().sort);
  Subst inst = act.params;
  inst.push_back(act.scrut);
  return {subst_apply(d->cod, inst), d->codsort, d->codlevel};
}

void Typer::check(const Context& ctx, const TermP& t, const TermP& expected, const SortName& sort) {
  if (const auto* lam = t->as<Lam>()) {
    TermP E = whnf(expected);
    if (const auto* pi = E->as<Pi>()) {
      check_binder(ctx, lam->dom);
      if (lam->dom.sort != pi->dom.sort || !convertible_types(ctx, lam->dom.type, pi->dom.type))
        mismatch(ctx, lam->dom.type, pi->dom.type, "the binder of " + show(ctx, t));
      check(extend(ctx, pi->dom), lam->body, pi->cod, sort);
      return;
    }
  }
  auto r = infer(ctx, t);
  if (r.sort != sort)
    throw KernelError(tag::kSortMismatch, show(ctx, t) + " lives in sort " + r.sort +
                                              " but sort " + sort + " is expected");
  if (!convertible_types(ctx, r.type, expected)) mismatch(ctx, r.type, expected, show(ctx, t));
}

TypingResult Typer::metavar_type(const Context& lin, const MetaVar& q, const ConstantDecl& d,
                                 const Subst& renaming, const Context& delta) {
  if (q.var >= lin.size()) throw KernelError(tag::kPattern, "metavariable out of scope");
  auto b = ctx_lookup(lin, q.var);
  if (!q.rec) return {b.type, b.sort, b.level};
  try {
    check_substitution(lin, *q.rec, d.params);
  } catch (const KernelError& e) {
    retag(e, tag::kPattern, "recursive occurrence ?" + b.name + "{...} does not instantiate params(" + d.name + ")");
  }
  TermP dt = subst_apply(d.scrutinee().type, *q.rec);
  if (!convertible_types(delta, subst_apply(b.type, renaming), subst_apply(dt, renaming)))
    throw KernelError(tag::kPattern, "recursive occurrence ?" + b.name + " has type " +
                                         show(lin, b.type) + " but dom(" + d.name + ") gives " +
                                         show(lin, dt));
  return {dt, d.scrutinee().sort, d.scrutinee().level};
}

TypingResult Typer::check_pattern(const Context& lin, const Pattern& pat, const ConstantDecl& d,
                                  const Subst& renaming, const Context& delta) {
  auto same = [&](const TermP& a, const TermP& b) {
    return convertible_types(delta, subst_apply(a, renaming), subst_apply(b, renaming));
  };
  if (const auto* h = std::get_if<HeadPat>(&pat)) {
    const auto* c = sig_.decl(h->name);
    if (!c || !is_inert(c->kind)) throw KernelError(tag::kPattern, "pattern head " + h->name + " is not an inert constant");
    Context tel = c->params;
    tel.insert(tel.end(), c->dom.begin(), c->dom.end());
    if (tel.size() != h->args.size())
      throw KernelError(tag::kPattern, "pattern " + h->name + " expects " + std::to_string(tel.size()) +
                                           " metavariables, got " + std::to_string(h->args.size()));
    Subst prefix;
    for (std::size_t k = 0; k < tel.size(); ++k) {
      TermP expected = subst_apply(tel[k].type, prefix);
      auto r = metavar_type(lin, h->args[k], d, renaming, delta);
      if (r.sort != tel[k].sort || !same(r.type, expected))
        throw KernelError(tag::kPattern, "argument " + std::to_string(k + 1) + " of pattern " + h->name +
                                             " has type " + show(lin, r.type) + " but " +
                                             show(lin, expected) + " is expected");
      prefix.push_back(mk_var(h->args[k].var));
    }
    return {subst_apply(c->cod, prefix), c->codsort, c->codlevel};
  }
  const auto& p = std::get<PiPat>(pat);
  auto r1 = metavar_type(lin, p.dom, d, renaming, delta);
  if (r1.sort != kTypeSort || !same(r1.type, mk_univ(p.sort, p.level)))
    throw KernelError(tag::kPattern, "domain of the Pi pattern must have type Univ " + p.sort + " " +
                                         std::to_string(p.level));
  if (p.cod.var >= lin.size()) throw KernelError(tag::kPattern, "metavariable out of scope");
  auto b2 = ctx_lookup(lin, p.cod.var);
  TermP T = whnf(b2.type);
  const auto* pi = T->as<Pi>();
  const auto* u = pi ? whnf(pi->cod)->as<Univ>() : nullptr;
  if (!u) throw KernelError(tag::kPattern, "codomain metavariable of the Pi pattern must be a type family");
  TermP family = mk_arrow(Binder{mk_var(p.dom.var), p.sort, p.level, "y"}, mk_univ(u->sort, u->level));
  if (!same(b2.type, family))
    throw KernelError(tag::kPattern, "codomain metavariable has type " + show(lin, b2.type) +
                                         " but " + show(lin, family) + " is expected");
  if (p.cod.rec) {
    try {
      check_substitution(lin, *p.cod.rec, d.params);
    } catch (const KernelError& e) {
      retag(e, tag::kPattern, "recursive occurrence does not instantiate params(" + d.name + ")");
    }
    if (!same(subst_apply(d.scrutinee().type, *p.cod.rec), mk_univ(u->sort, u->level)))
      throw KernelError(tag::kPattern, "recursive codomain family does not land in dom(" + d.name + ")");
  }
  Level l = std::max(p.level, u->level);
  return {mk_univ(u->sort, l), kTypeSort, l + 1};
}

void Typer::check_rewrite_rule(const RewriteRule& rule) {
  const auto* d = sig_.decl(rule.head);
  if (!d || is_inert(d->kind) || d->dom.size() != 1)
    throw KernelError(tag::kRuleHead, "rule head " + rule.head + " is not an active constant");

  // (i)
  try {
    check_context(rule.delta);
    check_context(rule.delta_lin);
    for (const auto& s : rule.renaming)
      if (!s->is<Var>()) throw KernelError(tag::kRewRenaming, "the renaming may only contain variables");
    check_substitution(rule.delta, rule.renaming, rule.delta_lin);
  } catch (const KernelError& e) {
    retag(e, tag::kRewRenaming, "renaming");
  }
  // (ii)
  try {
    for (const auto& x : rule.param_vars)
      if (!x->is<Var>()) throw KernelError(tag::kRewParams, "parameter positions may only contain variables");
    check_substitution(rule.delta_lin, rule.param_vars, d->params);
  } catch (const KernelError& e) {
    retag(e, tag::kRewParams, "parameters");
  }
  // (iii)
  TypingResult pt;
  try {
    pt = check_pattern(rule.delta_lin, rule.pat, *d, rule.renaming, rule.delta);
  } catch (const KernelError& e) {
    retag(e, tag::kRewPattern, "pattern");
  }
  TermP want = subst_apply(subst_apply(d->scrutinee().type, rule.param_vars), rule.renaming);
  if (pt.sort != d->scrutinee().sort ||
      !convertible_types(rule.delta, subst_apply(pt.type, rule.renaming), want))
    throw KernelError(tag::kRewPattern, "pattern: its type " +
                                            show(rule.delta, subst_apply(pt.type, rule.renaming)) +
                                            " is not dom(" + rule.head + ") = " + show(rule.delta, want));
  // (iv)
  Context ext = rule.delta;
  const Context rec = occ_rec(*d, rule.pat, &rule.delta_lin);
  for (std::size_t k = 0; k < rec.size(); ++k) {
    Binder b = rec[k];
    b.type = shift(subst_apply(b.type, rule.renaming), static_cast<std::int64_t>(k));
    ext.push_back(std::move(b));
  }
  Subst lhs = rule.param_vars;
  lhs.push_back(erase_pattern(rule.pat));
  TermP goal = shift(subst_apply(subst_apply(d->cod, lhs), rule.renaming),
                     static_cast<std::int64_t>(rec.size()));
  try {
    check(ext, rule.rhs, goal, d->codsort);
  } catch (const KernelError& e) {
    retag(e, tag::kRewRhs, "right-hand side");
  }
  // (v)
  check_linearizable_or_throw(sig_, rule);
}

Diagnostic to_diagnostic(const KernelError& e) {
  return Diagnostic{Severity::Error, e.tag(), e.what(), {}, std::nullopt};
}

namespace {
template <class F>
Diagnostics run(F&& f) {
  try {
    f();
    return {};
  } catch (const KernelError& e) {
    return {to_diagnostic(e)};
  }
}
}  // namespace

TypingResult infer(const Parametrization& p, const Context& ctx, const TermP& t,
                   const ConversionOptions& opts) {
  return Typer(p, opts).infer(ctx, t);
}

Diagnostics check(const Parametrization& p, const Context& ctx, const TermP& t,
                  const TermP& expected, const SortName& sort, const ConversionOptions& opts) {
  return run([&] { Typer(p, opts).check(ctx, t, expected, sort); });
}

Diagnostics check_context(const Parametrization& p, const Context& ctx, const ConversionOptions& opts) {
  return run([&] { Typer(p, opts).check_context(ctx); });
}

Diagnostics check_substitution(const Parametrization& p, const Context& ctx, const Subst& sub,
                               const Context& target, const ConversionOptions& opts) {
  return run([&] { Typer(p, opts).check_substitution(ctx, sub, target); });
}

Diagnostics check_pattern(const Parametrization& p, const Context& lin, const Pattern& pat,
                          const TermP& expected, const SortName& sort, const std::string& d,
                          const ConversionOptions& opts) {
  return run([&] {
    const auto* decl = p.sig.decl(d);
    if (!decl) throw KernelError(tag::kScope, "unknown constant " + d);
    Typer ty(p, opts);
    auto id = id_subst(static_cast<std::uint32_t>(lin.size()));
    auto r = ty.check_pattern(lin, pat, *decl, id, lin);
    if (r.sort != sort || !ty.convertible_types(lin, r.type, expected))
      throw KernelError(tag::kPattern, "pattern type does not match the expected type");
  });
}

Diagnostics check_rewrite_rule(const Parametrization& p, const RewriteRule& rule,
                               const ConversionOptions& opts) {
  return run([&] { Typer(p, opts).check_rewrite_rule(rule); });
}

}  // namespace mutt
