#include "mutt/elaborate.hpp"

#include <algorithm>

#include "mutt/reduction.hpp"
#include "mutt/typing.hpp"

namespace mutt {

void Scope::push(Binder b, std::string name) {
  ctx.push_back(std::move(b));
  names.push_back(std::move(name));
}

void Scope::pop() {
  ctx.pop_back();
  names.pop_back();
}

namespace {

[[noreturn]] void fail(const char* t, const std::string& msg, const Span& span) {
  throw SpannedError(t, msg, span);
}

template <class F>
auto at_span(const Span& span, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SpannedError&) {
    throw;
  } catch (const KernelError& e) {
    throw SpannedError(e.tag(), e.what(), span);
  }
}

std::optional<std::uint32_t> lookup_local(const Scope& sc, const std::string& name) {
  if (name == "_") return std::nullopt;
  for (std::size_t k = sc.names.size(); k-- > 0;)
    if (sc.names[k] == name) return static_cast<std::uint32_t>(sc.names.size() - 1 - k);
  return std::nullopt;
}

}  // namespace

Elaborator::Elaborator(const Parametrization& p, const Definitions& defs, CheckOptions opts)
    : p_(p), defs_(defs), opts_(std::move(opts)) {}

std::pair<SortName, Level> Elaborator::universe_of(const Scope& sc, const TermP& a, const Span& span) {
  return at_span(span, [&] {
    Typer ty(p_, opts_.conv, opts_.fuel);
    return ty.infer_type(sc.ctx, a);
  });
}

TermP Elaborator::closed_term(const ast::TermP& t) {
  Scope sc;
  return term(sc, t);
}

Context Elaborator::telescope(Scope& sc, const std::vector<ast::BinderGroup>& groups) {
  Context out;
  for (const auto& g : groups) {
    TermP a = term(sc, g.type);
    SortName s;
    Level l = 0;
    if (g.sort && g.level) {
      s = *g.sort;
      l = *g.level;
    } else {
      std::tie(s, l) = universe_of(sc, a, g.span);
    }
    for (std::size_t k = 0; k < g.names.size(); ++k) {
      Binder b{shift(a, static_cast<std::int64_t>(k)), s, l, g.names[k].text};
      out.push_back(b);
      sc.push(std::move(b), g.names[k].text);
    }
  }
  return out;
}

TermP Elaborator::unit(Scope& sc, const std::vector<ast::TermP>& items, std::size_t& i, const Span& span) {
  const auto& it = items[i++];
  if (it->kind != ast::Term::Kind::Name) return term(sc, it);
  const std::string& n = it->name;
  if (auto v = lookup_local(sc, n)) return mk_var(*v);
  if (auto d = defs_.find(n); d != defs_.end()) return d->second;
  const auto* c = p_.sig.decl(n);
  if (!c) fail(tag::kScope, "unknown name `" + n + "`", it->span);
  const bool inert = is_inert(c->kind);
  const std::size_t arity = inert ? c->arity() : c->params.size() + 1;
  std::vector<TermP> args;
  for (std::size_t k = 0; k < arity; ++k) {
    if (i >= items.size())
      fail(tag::kArity, "`" + n + "` expects " + std::to_string(arity) + " argument" +
                            (arity == 1 ? "" : "s") + ", got " + std::to_string(k),
           it->span);
    args.push_back(unit(sc, items, i, span));
  }
  if (inert) return mk_inert(n, std::move(args));
  TermP scrut = args.back();
  args.pop_back();
  return mk_active(n, std::move(args), std::move(scrut));
}

TermP Elaborator::term(Scope& sc, const ast::TermP& t) {
  using K = ast::Term::Kind;
  switch (t->kind) {
    case K::Univ:
      if (!p_.has_sort(t->sort)) fail(tag::kSortTable, "unknown sort `" + t->sort + "`", t->span);
      return mk_univ(t->sort, t->level);
    case K::Name:
    case K::Apps: {
      const auto items = t->kind == K::Name ? std::vector<ast::TermP>{t} : t->items;
      std::size_t i = 0;
      TermP head = unit(sc, items, i, t->span);
      while (i < items.size()) head = mk_app(head, unit(sc, items, i, t->span));
      return head;
    }
    case K::Arrow: {
      TermP a = term(sc, t->dom);
      auto [s, l] = universe_of(sc, a, t->dom->span);
      Binder b{a, s, l, "_"};
      sc.push(b, "");
      TermP body = term(sc, t->body);
      sc.pop();
      return mk_pi(std::move(b), std::move(body));
    }
    case K::Fun:
    case K::Pi: {
      Context tel = telescope(sc, t->binders);
      TermP body = term(sc, t->body);
      for (std::size_t k = tel.size(); k-- > 0;) {
        sc.pop();
        body = t->kind == K::Fun ? mk_lam(tel[k], body) : mk_pi(tel[k], body);
      }
      return body;
    }
  }
  fail(tag::kSyntax, "unsupported term", t->span);
}

ConstantDecl Elaborator::inert_decl(const ast::InertDecl& d, ConstKind kind) {
  Scope sc;
  ConstantDecl c;
  c.name = d.name.text;
  c.kind = kind;
  c.params = telescope(sc, d.params);
  c.dom = telescope(sc, d.recs);
  c.cod = term(sc, d.cod);
  std::tie(c.codsort, c.codlevel) = universe_of(sc, c.cod, d.cod->span);
  return c;
}

PositiveType Elaborator::positive(const ast::PositiveDecl& d) {
  PositiveType out;
  Scope sc;
  auto& k = out.type;
  k.name = d.name.text;
  k.kind = ConstKind::TypeConst;
  k.params = telescope(sc, d.params);
  k.cod = term(sc, d.cod);
  std::tie(k.codsort, k.codlevel) = universe_of(sc, k.cod, d.cod->span);

  Parametrization q{p_.sorts, p_.sig};
  q.sig.add(PositiveType{k, {}});
  Elaborator inner(q, defs_, opts_);
  for (const auto& c : d.constructors) out.constructors.push_back(inner.inert_decl(c, ConstKind::Constructor));
  return out;
}

NegativeType Elaborator::negative(const ast::NegativeDecl& d) {
  NegativeType out;
  Scope sc;
  auto& k = out.type;
  k.name = d.name.text;
  k.kind = ConstKind::TypeConst;
  k.params = telescope(sc, d.params);
  k.cod = term(sc, d.cod);
  std::tie(k.codsort, k.codlevel) = universe_of(sc, k.cod, d.cod->span);
  const auto* u = k.cod->as<Univ>();
  if (!u) fail(tag::kNeg2, "the type of " + k.name + " must be a universe", d.cod->span);

  Binder self{mk_inert(k.name, id_subst(static_cast<std::uint32_t>(k.params.size()))), u->sort, u->level,
              d.self.text};
  sc.push(self, d.self.text);
  for (const auto& o : d.observations) {
    Parametrization q{p_.sorts, p_.sig};
    q.sig.add(out);
    Elaborator inner(q, defs_, opts_);
    ConstantDecl c;
    c.name = o.name.text;
    c.kind = ConstKind::Observation;
    c.params = k.params;
    c.dom = {self};
    c.cod = inner.term(sc, o.cod);
    if (o.sort && o.level) {
      c.codsort = *o.sort;
      c.codlevel = *o.level;
    } else {
      std::tie(c.codsort, c.codlevel) = inner.universe_of(sc, c.cod, o.cod->span);
    }
    out.observations.push_back(std::move(c));
  }
  return out;
}

Eliminator Elaborator::eliminator(const ast::EliminatorDecl& d) {
  Eliminator out;
  Scope sc;
  auto& e = out.decl;
  e.name = d.name.text;
  e.kind = ConstKind::Eliminator;
  e.params = telescope(sc, d.params);
  e.dom = telescope(sc, {d.scrutinee});
  e.cod = term(sc, d.cod);
  if (d.sort && d.level) {
    e.codsort = *d.sort;
    e.codlevel = *d.level;
  } else {
    std::tie(e.codsort, e.codlevel) = universe_of(sc, e.cod, d.cod->span);
  }
  Parametrization q{p_.sorts, p_.sig};
  q.sig.add(Eliminator{e, {}});
  Elaborator inner(q, defs_, opts_);
  for (const auto& r : d.rules) out.rules.push_back(inner.rule(r));
  return out;
}

Builder Elaborator::builder(const ast::BuilderDecl& d) {
  Builder out;
  out.decl = inert_decl(d.decl, ConstKind::Builder);
  Parametrization q{p_.sorts, p_.sig};
  q.sig.add(Builder{out.decl, {}});
  Elaborator inner(q, defs_, opts_);
  for (const auto& r : d.rules) out.rules.push_back(inner.rule(r));
  return out;
}

RewriteRule Elaborator::rule(const ast::Rule& r) {
  RewriteRule out;
  out.head = r.head.text;
  const auto* d = p_.sig.decl(out.head);
  if (!d || is_inert(d->kind) || d->dom.size() != 1)
    fail(tag::kRuleHead, "`" + out.head + "` is not an active constant", r.head.span);

  Scope lin;
  out.delta_lin = telescope(lin, r.lin);
  const auto nl = static_cast<std::uint32_t>(out.delta_lin.size());
  auto lin_var = [&](const std::string& n, const Span& span) {
    auto v = lookup_local(lin, n);
    if (!v) fail(tag::kScope, "`" + n + "` is not bound by the linear context", span);
    return mk_var(*v);
  };

  Scope delta;
  if (r.delta) {
    out.delta = telescope(delta, *r.delta);
    for (const auto& n : r.via) {
      auto v = lookup_local(delta, n.text);
      if (!v) fail(tag::kScope, "`" + n.text + "` is not bound by the context after `with`", n.span);
      out.renaming.push_back(mk_var(*v));
    }
    if (out.renaming.size() != nl)
      fail(tag::kRewRenaming,
           "`via` lists " + std::to_string(out.renaming.size()) + " variables but the linear context has " +
               std::to_string(nl),
           r.span);
  } else {
    out.delta = out.delta_lin;
    out.renaming = id_subst(nl);
    delta = lin;
  }

  const std::size_t np = d->params.size();
  if (r.lhs.size() < np + 1)
    fail(tag::kRewPattern, "expected " + std::to_string(np) + " parameter names followed by a pattern", r.span);
  for (std::size_t k = 0; k < np; ++k) {
    const auto& it = r.lhs[k];
    if (it.kind != ast::LhsItem::Kind::Name)
      fail(tag::kRewParams, "parameter positions must be variable names", it.span);
    out.param_vars.push_back(lin_var(it.name, it.span));
  }
  std::vector<std::string> rec_names;
  auto meta = [&](const ast::LhsItem& it) {
    if (it.kind != ast::LhsItem::Kind::Meta) fail(tag::kRewPattern, "expected a metavariable `?x`", it.span);
    MetaVar q;
    q.var = lin_var(it.name, it.span)->as<Var>()->index;
    if (it.rec) {
      if (it.rec->size() != np)
        fail(tag::kRewPattern,
             "a recursive metavariable lists exactly the " + std::to_string(np) + " parameters of " + out.head,
             it.span);
      Subst s;
      for (const auto& a : *it.rec) s.push_back(term(lin, a));
      q.rec = std::move(s);
      rec_names.push_back(it.name + "^rec");
    }
    return q;
  };
  const auto& h = r.lhs[np];
  if (h.kind == ast::LhsItem::Kind::PiHead) {
    if (r.lhs.size() != np + 3) fail(tag::kRewPattern, "a Pi pattern has exactly two metavariables", h.span);
    PiPat p;
    p.sort = h.sort;
    p.level = h.level;
    p.dom = meta(r.lhs[np + 1]);
    p.cod = meta(r.lhs[np + 2]);
    out.pat = std::move(p);
  } else if (h.kind == ast::LhsItem::Kind::Name) {
    const auto* c = p_.sig.decl(h.name);
    if (!c || !is_inert(c->kind)) fail(tag::kRewPattern, "`" + h.name + "` is not an inert constant", h.span);
    HeadPat p;
    p.name = h.name;
    for (std::size_t k = np + 1; k < r.lhs.size(); ++k) p.args.push_back(meta(r.lhs[k]));
    out.pat = std::move(p);
  } else {
    fail(tag::kRewPattern, "a pattern starts with an inert constant or `Pi`", h.span);
  }

  if (r.tau) {
    Subst t;
    for (const auto& n : *r.tau) t.push_back(lin_var(n.text, n.span));
    out.tau = std::move(t);
  }

  const Context rec = occ_rec(*d, out.pat, &out.delta_lin);
  for (std::size_t k = 0; k < rec.size(); ++k) {
    Binder b = rec[k];
    b.type = shift(subst_apply(b.type, out.renaming), static_cast<std::int64_t>(k));
    delta.push(std::move(b), rec_names[k]);
  }
  out.rhs = term(delta, r.rhs);
  return out;
}

}  // namespace mutt
