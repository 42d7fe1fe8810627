#include "mutt/check.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mutt/printer.hpp"
#include "mutt/typing.hpp"

namespace mutt {

CheckOptions default_check_options(const Parametrization& p) {
  CheckOptions o;
  o.conv = default_conversion_options(p);
  return o;
}

bool check_determinism(const std::vector<RewriteRule>& rules, Diagnostics* out) {
  std::set<std::pair<std::string, std::string>> seen;
  bool ok = true;
  for (const auto& r : rules) {
    auto key = std::make_pair(r.head, pattern_head(r.pat));
    if (!seen.insert(key).second) {
      ok = false;
      if (out)
        out->push_back({Severity::Error, tag::kDeterminism,
                        "two rules for " + key.first + " match on " + key.second, {}, std::nullopt});
    }
  }
  return ok;
}

bool react(const Signature& sig, const std::string& d, const std::string& c) {
  return sig.rule_for(d, c) != nullptr;
}

bool react(const std::vector<RewriteRule>& rules, const std::string& d, const std::string& c) {
  return std::any_of(rules.begin(), rules.end(),
                     [&](const RewriteRule& r) { return r.head == d && pattern_head(r.pat) == c; });
}

bool check_progress(const std::vector<std::string>& inerts, const std::vector<std::string>& actives,
                    const std::vector<RewriteRule>& rules, Diagnostics* out) {
  for (const auto& d : actives)
    for (const auto& c : inerts)
      if (!react(rules, d, c)) {
        if (out)
          out->push_back({Severity::Error, tag::kProgress,
                          d + " does not react to " + c + ": no rule matches on it", {}, std::nullopt});
        return false;
      }
  return true;
}

std::vector<std::string> eliminator_heads(const Signature& sig, const ConstantDecl& d) {
  std::vector<std::string> out;
  if (d.dom.size() != 1) return out;
  const TermP& dom = d.scrutinee().type;
  if (const auto* u = dom->as<Univ>()) {
    out.push_back(kPiHead);
    for (const auto& k : sig.type_constants()) {
      auto uk = type_constant_universe(*sig.decl(k));
      if (uk && uk->first == u->sort && uk->second == u->level) out.push_back(k);
    }
  } else if (const auto* in = dom->as<Inert>()) {
    if (sig.is_positive(in->name)) out = sig.constructors_of(in->name);
  }
  return out;
}

namespace {

Diagnostic diag(const char* t, std::string msg) {
  return Diagnostic{Severity::Error, t, std::move(msg), {}, std::nullopt};
}

// Typing errors inside a clause are reported under the clause's tag, except
// scope errors (dependency order) and fuel exhaustion, which keep their own.
Diagnostic clause_error(const char* clause, const KernelError& e, const std::string& where) {
  std::string t = e.tag();
  if (t == tag::kFuel) return diag(tag::kFuel, where + ": " + e.what());
  if (t == tag::kScope) return diag(tag::kOrder, where + ": " + e.what());
  if (t == tag::kSortTable) return diag(tag::kSortTable, where + ": " + e.what());
  return diag(clause, where + ": " + e.what() + " [" + t + "]");
}

template <class F>
bool guard(Diagnostics& out, const char* clause, const std::string& where, F&& f) {
  try {
    f();
    return true;
  } catch (const KernelError& e) {
    out.push_back(clause_error(clause, e, where));
    return false;
  }
}

bool names_fresh(const Signature& sig, const std::vector<const ConstantDecl*>& decls, Diagnostics& out) {
  std::set<std::string> local;
  for (const auto* d : decls) {
    if (d->name.empty() || d->name == kPiHead) {
      out.push_back(diag(tag::kOrder, "invalid constant name `" + d->name + "`"));
      return false;
    }
    if (sig.lookup(d->name) || !local.insert(d->name).second) {
      out.push_back(diag(tag::kOrder, "constant " + d->name + " is declared twice"));
      return false;
    }
  }
  return true;
}

TermP identity_instance(const std::string& k, std::size_t n) {
  return mk_inert(k, id_subst(static_cast<std::uint32_t>(n)));
}

// Shared clauses 1 and 2 for positive and negative types. Returns the
// universe (s, i) of K on success.
std::optional<std::pair<SortName, Level>> check_type_constant(const Parametrization& p,
                                                              const ConstantDecl& k, Typer& ty,
                                                              const char* c1, const char* c2,
                                                              Diagnostics& out) {
  if (k.kind != ConstKind::TypeConst || !k.dom.empty() || !k.cod) {
    out.push_back(diag(c2, k.name + " must be a type constant with an empty domain"));
    return std::nullopt;
  }
  const auto* u = k.cod->as<Univ>();
  if (!u) {
    out.push_back(diag(c2, "the codomain of " + k.name + " must be a universe"));
    return std::nullopt;
  }
  if (!p.has_sort(u->sort)) {
    out.push_back(diag(tag::kSortTable, k.name + " lives in the unknown sort " + u->sort));
    return std::nullopt;
  }
  if (k.codsort != kTypeSort || k.codlevel != u->level + 1) {
    out.push_back(diag(c2, "universe annotation of " + k.name + " must be Type # " +
                               std::to_string(u->level + 1)));
    return std::nullopt;
  }
  for (const auto& e : p.sig.entries()) {
    const auto* el = std::get_if<Eliminator>(e.get());
    if (!el || el->decl.dom.size() != 1) continue;
    const auto* du = el->decl.scrutinee().type->as<Univ>();
    if (du && du->sort == u->sort && du->level == u->level) {
      out.push_back(diag(c1, k.name + " would extend Univ " + u->sort + " " + std::to_string(u->level) +
                                 ", which is already eliminated by " + el->decl.name));
      return std::nullopt;
    }
  }
  if (!guard(out, c2, "parameters of " + k.name, [&] { ty.check_context(k.params); })) return std::nullopt;
  return std::make_pair(u->sort, u->level);
}

bool well_shaped_active(const ConstantDecl& d, Diagnostics& out, const char* clause) {
  if (d.dom.size() != 1 || !d.cod) {
    out.push_back(diag(clause, d.name + " must have exactly one scrutinee and a codomain"));
    return false;
  }
  return true;
}

std::string rule_where(const RewriteRule& r, std::size_t i) {
  return "rule " + std::to_string(i + 1) + " (" + r.head + " on " + pattern_head(r.pat) + ")";
}

// Rule validity for each rule, with earlier rules of the same entry active.
template <class MakeEntry>
void check_rules_incrementally(const Parametrization& prefix, const std::vector<RewriteRule>& rules,
                               MakeEntry&& make, const CheckOptions& opts, Diagnostics& out) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    Parametrization q{prefix.sorts, prefix.sig};
    q.sig.add(make(std::vector<RewriteRule>(rules.begin(), rules.begin() + static_cast<long>(i))));
    Typer ty(q, opts.conv, opts.fuel);
    try {
      ty.check_rewrite_rule(rules[i]);
    } catch (const KernelError& e) {
      out.push_back(diag(tag::kRuleHead, ""));
      out.back().tag = e.tag() == tag::kScope ? std::string(tag::kOrder) : e.tag();
      out.back().message = rule_where(rules[i], i) + ": " + e.what();
    }
  }
}

}  // namespace

bool is_singleton(const Parametrization& p, const PositiveType& k) {
  const auto* u = k.type.cod ? k.type.cod->as<Univ>() : nullptr;
  if (!u) return false;
  if (k.constructors.size() > 1) return false;
  for (const auto& c : k.constructors) {
    std::set<std::uint32_t> index_vars;  // params(c) that the type determines
    const auto* cod = c.cod ? c.cod->as<Inert>() : nullptr;
    const auto total = static_cast<std::uint32_t>(c.params.size() + c.dom.size());
    if (cod)
      for (const auto& a : cod->args)
        if (const auto* v = a->as<Var>(); v && v->index < total) index_vars.insert(total - 1 - v->index);
    for (std::uint32_t j = 0; j < c.params.size(); ++j) {
      if (index_vars.count(j)) continue;
      if (c.params[j].sort != u->sort) return false;
    }
    for (const auto& r : c.dom)
      if (r.sort != u->sort) return false;
  }
  (void)p;
  return true;
}

Diagnostics check_positive_type(const Parametrization& p, const PositiveType& e, const CheckOptions& opts) {
  Diagnostics out;
  std::vector<const ConstantDecl*> decls{&e.type};
  for (const auto& c : e.constructors) decls.push_back(&c);
  if (!names_fresh(p.sig, decls, out)) return out;

  Typer base(p, opts.conv, opts.fuel);
  auto uni = check_type_constant(p, e.type, base, tag::kPos1, tag::kPos2, out);
  if (!uni) return out;
  const auto& [s, i] = *uni;
  const std::string& K = e.type.name;

  Parametrization q{p.sorts, p.sig};
  q.sig.add(PositiveType{e.type, {}});
  Typer ty(q, opts.conv, opts.fuel);
  for (const auto& c : e.constructors) {
    const std::string where = "constructor " + c.name;
    if (c.kind != ConstKind::Constructor || !c.cod) {
      out.push_back(diag(tag::kPos3, where + " is not declared as a constructor"));
      continue;
    }
    guard(out, tag::kPos3, where, [&] {
      ty.check_context(c.params);
      Context ctx = c.params;
      for (const auto& r : c.dom) {
        const auto* in = r.type->as<Inert>();
        if (!in || in->name != K)
          throw KernelError(tag::kPos3, "recursive argument `" + r.name + "` must have type " + K +
                                            " applied to its parameters, not " +
                                            print_term(r.type, context_names(ctx)));
        ty.check_substitution(ctx, in->args, e.type.params);
        ty.check_binder(ctx, r);
        ctx.push_back(r);
      }
      const auto* cod = c.cod->as<Inert>();
      if (!cod || cod->name != K)
        throw KernelError(tag::kPos3, "codomain must be " + K + " applied to its parameters");
      ty.check_substitution(ctx, cod->args, e.type.params);
      if (c.codsort != s || c.codlevel != i)
        throw KernelError(tag::kPos3, "codomain annotation must be " + s + " # " + std::to_string(i));
    });
  }
  return out;
}

Diagnostics check_negative_type(const Parametrization& p, const NegativeType& e, const CheckOptions& opts) {
  Diagnostics out;
  std::vector<const ConstantDecl*> decls{&e.type};
  for (const auto& o : e.observations) decls.push_back(&o);
  if (!names_fresh(p.sig, decls, out)) return out;

  Typer base(p, opts.conv, opts.fuel);
  auto uni = check_type_constant(p, e.type, base, tag::kNeg1, tag::kNeg2, out);
  if (!uni) return out;
  const auto& [s, i] = *uni;
  const std::string& K = e.type.name;
  const TermP self = identity_instance(K, e.type.params.size());

  NegativeType partial{e.type, {}};
  for (const auto& o : e.observations) {
    const std::string where = "observation " + o.name;
    Parametrization q{p.sorts, p.sig};
    q.sig.add(partial);
    Typer ty(q, opts.conv, opts.fuel);
    bool ok = guard(out, tag::kNeg3, where, [&] {
      if (o.kind != ConstKind::Observation || o.dom.size() != 1 || !o.cod)
        throw KernelError(tag::kNeg3, "must be an active constant with one scrutinee");
      if (!context_eq(o.params, e.type.params))
        throw KernelError(tag::kNeg3, "parameters must be exactly params(" + K + ")");
      const Binder& x = o.scrutinee();
      if (!alpha_eq(x.type, self) || x.sort != s || x.level != i)
        throw KernelError(tag::kNeg3, "domain must be " + K + " applied to its own parameters");
      Context ctx = o.params;
      ctx.push_back(x);
      ty.check_type(ctx, o.cod, o.codsort, o.codlevel);
    });
    if (ok && p.isolated(s) && !p.isolated(o.codsort))
      out.push_back(diag(tag::kIsolation, where + " leaves the isolated sort " + s + " for " + o.codsort));
    partial.observations.push_back(o);
  }
  return out;
}

Diagnostics check_eliminator(const Parametrization& p, const Eliminator& e, const CheckOptions& opts) {
  Diagnostics out;
  const auto& d = e.decl;
  if (!names_fresh(p.sig, {&d}, out)) return out;
  if (d.kind != ConstKind::Eliminator) {
    out.push_back(diag(tag::kElimTyping, d.name + " is not declared as an eliminator"));
    return out;
  }
  if (!well_shaped_active(d, out, tag::kElimTyping)) return out;

  Typer ty(p, opts.conv, opts.fuel);
  if (!guard(out, tag::kElimTyping, "parameters of " + d.name, [&] { ty.check_context(d.params); }))
    return out;
  const Binder& x = d.scrutinee();
  const PositiveType* domain_type = nullptr;
  if (const auto* u = x.type->as<Univ>()) {
    if (!p.has_sort(u->sort)) {
      out.push_back(diag(tag::kSortTable, d.name + " eliminates the unknown sort " + u->sort));
      return out;
    }
  } else if (const auto* in = x.type->as<Inert>(); in && p.sig.is_positive(in->name)) {
    domain_type = &std::get<PositiveType>(*p.sig.entries()[p.sig.lookup(in->name)->entry]);
  } else {
    out.push_back(diag(tag::kElimDomain, "the domain of " + d.name +
                                             " must be a universe or a positive type constant"));
    return out;
  }
  if (!guard(out, tag::kElimTyping, "domain of " + d.name, [&] { ty.check_binder(d.params, x); }))
    return out;
  Context ctx = d.params;
  ctx.push_back(x);
  if (!p.has_sort(d.codsort)) {
    out.push_back(diag(tag::kSortTable, d.name + " lands in the unknown sort " + d.codsort));
    return out;
  }
  if (!guard(out, tag::kElimTyping, "codomain of " + d.name,
             [&] { ty.check_type(ctx, d.cod, d.codsort, d.codlevel); }))
    return out;

  const SortName domsort = x.sort;
  if (p.isolated(domsort) && !p.isolated(d.codsort))
    out.push_back(diag(tag::kIsolation, d.name + " eliminates the isolated sort " + domsort +
                                            " into the non-isolated sort " + d.codsort));
  if (domain_type) {
    const auto* u = domain_type->type.cod->as<Univ>();
    const auto* info = p.sort(u->sort);
    if (info && info->restricted && d.codsort != u->sort && !is_singleton(p, *domain_type))
      out.push_back(diag(tag::kSingleton,
                         d.name + " eliminates " + domain_type->type.name + " of the restricted sort " +
                             u->sort + " into " + d.codsort + ", but " + domain_type->type.name +
                             " is not a singleton"));
  }

  const auto heads = eliminator_heads(p.sig, d);
  std::set<std::string> allowed(heads.begin(), heads.end());
  for (std::size_t k = 0; k < e.rules.size(); ++k) {
    const auto& r = e.rules[k];
    if (r.head != d.name)
      out.push_back(diag(tag::kRuleHead, rule_where(r, k) + " must be headed by " + d.name));
    else if (!allowed.count(pattern_head(r.pat)))
      out.push_back(diag(tag::kRuleHead, rule_where(r, k) + " matches on " + pattern_head(r.pat) +
                                             ", which cannot inhabit the domain of " + d.name));
  }
  check_determinism(e.rules, &out);
  if (!p.isolated(d.codsort)) check_progress(heads, {d.name}, e.rules, &out);
  if (has_error(out)) return out;

  check_rules_incrementally(
      p, e.rules, [&](std::vector<RewriteRule> rs) { return Eliminator{d, std::move(rs)}; }, opts, out);
  return out;
}

Diagnostics check_builder(const Parametrization& p, const Builder& e, const CheckOptions& opts) {
  Diagnostics out;
  const auto& c = e.decl;
  if (!names_fresh(p.sig, {&c}, out)) return out;
  if (c.kind != ConstKind::Builder || !c.cod) {
    out.push_back(diag(tag::kBuilderTyping, c.name + " is not declared as a builder"));
    return out;
  }
  const auto* cod = c.cod->as<Inert>();
  if (!cod || !p.sig.is_negative(cod->name)) {
    out.push_back(diag(tag::kBuilderTyping, "the codomain of " + c.name + " must be a negative type"));
    return out;
  }
  const auto* k = p.sig.decl(cod->name);
  const auto uni = type_constant_universe(*k);
  Typer ty(p, opts.conv, opts.fuel);
  bool ok = guard(out, tag::kBuilderTyping, c.name, [&] {
    ty.check_context(c.params);
    Context ctx = c.params;
    for (const auto& r : c.dom) {
      ty.check_binder(ctx, r);
      ctx.push_back(r);
    }
    ty.check_substitution(ctx, cod->args, k->params);
    if (!uni || c.codsort != uni->first || c.codlevel != uni->second)
      throw KernelError(tag::kBuilderTyping, "codomain annotation must match the universe of " + k->name);
  });
  if (!ok) return out;

  const auto& obs = p.sig.observations_of(cod->name);
  std::set<std::string> obs_set(obs.begin(), obs.end());
  for (std::size_t i = 0; i < e.rules.size(); ++i) {
    const auto& r = e.rules[i];
    if (!obs_set.count(r.head) || pattern_head(r.pat) != c.name)
      out.push_back(diag(tag::kRuleHead, rule_where(r, i) + " must be headed by an observation of " +
                                             cod->name + " and match on " + c.name));
  }
  check_determinism(e.rules, &out);
  if (!p.isolated(uni->first)) check_progress({c.name}, obs, e.rules, &out);
  if (has_error(out)) return out;

  check_rules_incrementally(
      p, e.rules, [&](std::vector<RewriteRule> rs) { return Builder{c, std::move(rs)}; }, opts, out);
  return out;
}

Diagnostics check_entry(const Parametrization& p, const SignatureEntry& e, const CheckOptions& opts) {
  try {
    return std::visit(
        [&](const auto& x) -> Diagnostics {
          using E = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<E, PositiveType>)
            return check_positive_type(p, x, opts);
          else if constexpr (std::is_same_v<E, NegativeType>)
            return check_negative_type(p, x, opts);
          else if constexpr (std::is_same_v<E, Eliminator>)
            return check_eliminator(p, x, opts);
          else
            return check_builder(p, x, opts);
        },
        e);
  } catch (const KernelError& err) {
    return {diag(err.tag() == tag::kFuel ? tag::kFuel : tag::kOrder, entry_name(e) + ": " + err.what())};
  }
}

Diagnostics check_sorts(const Parametrization& p) {
  Diagnostics out;
  std::set<std::string> names;
  int types = 0;
  for (const auto& s : p.sorts) {
    if (!is_identifier(s.name) || is_keyword(s.name))
      out.push_back(diag(tag::kSortTable, "invalid sort name `" + s.name + "`"));
    if (!names.insert(s.name).second) out.push_back(diag(tag::kSortTable, "sort " + s.name + " is declared twice"));
    if (s.is_type) {
      ++types;
      if (s.name != kTypeSort) out.push_back(diag(tag::kSortTable, "the primordial sort must be named Type"));
      if (s.isolated) out.push_back(diag(tag::kSortTable, "Type cannot be isolated"));
      if (s.irrelevant) out.push_back(diag(tag::kSortTable, "Type cannot be proof-irrelevant"));
      if (s.restricted) out.push_back(diag(tag::kSortTable, "Type cannot be restricted"));
    }
  }
  if (types != 1) out.push_back(diag(tag::kSortTable, "exactly one sort must be the primordial Type"));
  return out;
}

Diagnostics check_eta_compat(const Parametrization& p, const ConversionOptions& opts) {
  Diagnostics out;
  if (!opts.eta_negative_records) return out;
  for (const auto& k : p.sig.type_constants()) {
    if (!p.sig.is_negative(k) || p.sig.builders_of(k).empty()) continue;
    if (!eta_record_allowed(p.sig, k))
      out.push_back(diag(tag::kEtaConflict,
                         "record eta is enabled but " + k +
                             " has builder rules beyond one projection rule per observation"));
  }
  if (opts.irrelevant_sorts.count(kTypeSort))
    out.push_back(diag(tag::kSortTable, "Type cannot be proof-irrelevant"));
  return out;
}

Diagnostics check_signature(const Parametrization& p, const CheckOptions& opts) {
  Diagnostics out = check_sorts(p);
  if (has_error(out)) return out;
  Parametrization prefix{p.sorts, {}};
  const auto& entries = p.sig.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto ds = check_entry(prefix, *entries[i], opts);
    for (auto& d : ds) {
      d.entry = i;
      d.message = entry_kind_name(*entries[i]) + " " + entry_name(*entries[i]) + ": " + d.message;
    }
    out.insert(out.end(), ds.begin(), ds.end());
    if (has_error(ds)) return out;
    prefix.sig.add(*entries[i]);
  }
  auto eta = check_eta_compat(p, opts.conv);
  out.insert(out.end(), eta.begin(), eta.end());
  return out;
}

Diagnostics check_signature(const Parametrization& p) {
  return check_signature(p, default_check_options(p));
}

}  // namespace mutt
