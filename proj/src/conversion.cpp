#include "mutt/conversion.hpp"

#include <ostream>

#include "mutt/printer.hpp"

namespace mutt {

ConversionOptions default_conversion_options(const Parametrization& p) {
  ConversionOptions o;
  for (const auto& s : p.sorts)
    if (s.irrelevant) o.irrelevant_sorts.insert(s.name);
  return o;
}

bool eta_record_allowed(const Signature& sig, const std::string& k) {
  const auto& builders = sig.builders_of(k);
  if (builders.size() != 1) return false;
  const auto& obs = sig.observations_of(k);
  const auto* info = sig.lookup(builders.front());
  const auto& entry = *sig.entries()[info->entry];
  const auto* rules = entry_rules(entry);
  if (!rules || rules->size() != obs.size()) return false;
  std::set<std::string> seen;
  for (const auto& r : *rules) {
    const auto* v = r.rhs->as<Var>();
    const auto* h = std::get_if<HeadPat>(&r.pat);
    if (!v || !h || h->name != builders.front()) return false;
    for (const auto& q : h->args)
      if (q.rec) return false;
    if (!seen.insert(r.head).second) return false;
  }
  return seen.size() == obs.size();
}

namespace {

bool is_neutral(const TermP& t) { return t->is<Var>() || t->is<App>() || t->is<Active>(); }

class Converter {
 public:
  Converter(const Signature& sig, const ConversionOptions& o, Fuel& f) : sig_(sig), opts_(o), fuel_(f) {}

  bool term(const Context& ctx, const TermP& t, const TermP& u, const TermP& ty, const SortName& sort) {
    Depth guard(depth_);
    log(ctx, t, u, ty);
    if (opts_.irrelevant_sorts.count(sort)) return true;
    if (alpha_eq(t, u)) return true;
    if (ty) {
      TermP T = whnf(sig_, ty, fuel_);
      if (const auto* pi = T->as<Pi>(); pi && opts_.eta_functions) {
        Context ext = ctx;
        ext.push_back(pi->dom);
        return term(ext, mk_app(shift(t, 1), mk_var(0)), mk_app(shift(u, 1), mk_var(0)), pi->cod, sort);
      }
      if (const auto* in = T->as<Inert>(); in && opts_.eta_negative_records &&
                                             sig_.is_negative(in->name) &&
                                             eta_record_allowed(sig_, in->name)) {
        for (const auto& o : sig_.observations_of(in->name)) {
          const auto* d = sig_.decl(o);
          Subst inst = in->args;
          inst.push_back(t);
          TermP ty_o = subst_apply(d->cod, inst);
          if (!term(ctx, mk_active(o, in->args, t), mk_active(o, in->args, u), ty_o, d->codsort))
            return false;
        }
        return true;
      }
    }
    return structural(ctx, whnf(sig_, t, fuel_), whnf(sig_, u, fuel_));
  }

  std::optional<NeutralType> neutral(const Context& ctx, const TermP& a, const TermP& b) {
    if (const auto* x = a->as<Var>()) {
      const auto* y = b->as<Var>();
      if (!y || x->index != y->index || x->index >= ctx.size()) return std::nullopt;
      auto bd = ctx_lookup(ctx, x->index);
      return NeutralType{bd.type, bd.sort};
    }
    if (const auto* x = a->as<App>()) {
      const auto* y = b->as<App>();
      if (!y) return std::nullopt;
      auto r = neutral(ctx, x->fn, y->fn);
      if (!r) return std::nullopt;
      TermP T = whnf(sig_, r->type, fuel_);
      const auto* pi = T->as<Pi>();
      if (!pi || !term(ctx, x->arg, y->arg, pi->dom.type, pi->dom.sort)) return std::nullopt;
      return NeutralType{subst1(pi->cod, x->arg), r->sort};
    }
    if (const auto* x = a->as<Active>()) {
      const auto* y = b->as<Active>();
      if (!y || x->name != y->name || x->params.size() != y->params.size()) return std::nullopt;
      const auto* d = sig_.decl(x->name);
      if (!d || d->params.size() != x->params.size() || d->dom.size() != 1) return std::nullopt;
      if (!telescope(ctx, d->params, x->params, y->params)) return std::nullopt;
      if (is_neutral(x->scrut) && is_neutral(y->scrut)) {
        if (!neutral(ctx, x->scrut, y->scrut)) return std::nullopt;
      } else if (!term(ctx, x->scrut, y->scrut, subst_apply(d->scrutinee().type, x->params),
                       d->scrutinee().sort)) {
        return std::nullopt;
      }
      Subst inst = x->params;
      inst.push_back(x->scrut);
      return NeutralType{subst_apply(d->cod, inst), d->codsort};
    }
    return std::nullopt;
  }

 private:
  struct Depth {
    explicit Depth(int& d) : d_(d) { ++d_; }
    ~Depth() { --d_; }
    int& d_;
  };

  void log(const Context& ctx, const TermP& t, const TermP& u, const TermP& ty) {
    if (!opts_.trace) return;
    auto names = context_names(ctx);
    *opts_.trace << std::string(static_cast<std::size_t>(2 * (depth_ - 1)), ' ')
                 << print_term(t, names) << "  ==  " << print_term(u, names);
    if (ty) *opts_.trace << "  :  " << print_term(ty, names);
    *opts_.trace << "\n";
  }

  bool telescope(const Context& ctx, const Context& tel, const std::vector<TermP>& a,
                 const std::vector<TermP>& b) {
    if (a.size() != tel.size() || b.size() != tel.size()) return false;
    Subst prefix;
    for (std::size_t k = 0; k < tel.size(); ++k) {
      if (!term(ctx, a[k], b[k], subst_apply(tel[k].type, prefix), tel[k].sort)) return false;
      prefix.push_back(a[k]);
    }
    return true;
  }

  bool structural(const Context& ctx, const TermP& a, const TermP& b) {
    if (alpha_eq(a, b)) return true;
    if (const auto* x = a->as<Univ>()) {
      const auto* y = b->as<Univ>();
      return y && x->sort == y->sort && x->level == y->level;
    }
    if (const auto* x = a->as<Pi>()) {
      const auto* y = b->as<Pi>();
      if (!y || x->dom.sort != y->dom.sort || x->dom.level != y->dom.level) return false;
      if (!term(ctx, x->dom.type, y->dom.type, nullptr, kTypeSort)) return false;
      Context ext = ctx;
      ext.push_back(x->dom);
      return term(ext, x->cod, y->cod, nullptr, kTypeSort);
    }
    if (const auto* x = a->as<Inert>()) {
      const auto* y = b->as<Inert>();
      if (!y || x->name != y->name || x->args.size() != y->args.size()) return false;
      const auto* d = sig_.decl(x->name);
      if (!d || d->arity() != x->args.size()) return false;
      Context tel = d->params;
      tel.insert(tel.end(), d->dom.begin(), d->dom.end());
      return telescope(ctx, tel, x->args, y->args);
    }
    // Congruence, or untyped eta when only one side is a lambda.
    const auto* la = a->as<Lam>();
    const auto* lb = b->as<Lam>();
    if ((la && lb) || ((la || lb) && opts_.eta_functions)) {
      const Binder& dom = la ? la->dom : lb->dom;
      Context ext = ctx;
      ext.push_back(dom);
      TermP ba = la ? la->body : mk_app(shift(a, 1), mk_var(0));
      TermP bb = lb ? lb->body : mk_app(shift(b, 1), mk_var(0));
      return term(ext, ba, bb, nullptr, kTypeSort);
    }
    if (is_neutral(a) && is_neutral(b)) return neutral(ctx, a, b).has_value();
    return false;
  }

  const Signature& sig_;
  const ConversionOptions& opts_;
  Fuel& fuel_;
  int depth_ = 0;
};

}  // namespace

bool conv_term(const Signature& sig, const Context& ctx, const TermP& t, const TermP& u,
               const TermP& ty, const SortName& sort, const ConversionOptions& opts, Fuel& fuel) {
  return Converter(sig, opts, fuel).term(ctx, t, u, ty, sort);
}

bool conv_term(const Signature& sig, const Context& ctx, const TermP& t, const TermP& u,
               const TermP& ty, const SortName& sort, const ConversionOptions& opts) {
  Fuel f;
  return conv_term(sig, ctx, t, u, ty, sort, opts, f);
}

bool conv_type(const Signature& sig, const Context& ctx, const TermP& a, const TermP& b,
               const ConversionOptions& opts, Fuel& fuel) {
  return Converter(sig, opts, fuel).term(ctx, a, b, nullptr, kTypeSort);
}

bool conv_type(const Signature& sig, const Context& ctx, const TermP& a, const TermP& b,
               const ConversionOptions& opts) {
  Fuel f;
  return conv_type(sig, ctx, a, b, opts, f);
}

std::optional<NeutralType> conv_neutral(const Signature& sig, const Context& ctx, const TermP& n1,
                                        const TermP& n2, const ConversionOptions& opts, Fuel& fuel) {
  return Converter(sig, opts, fuel).neutral(ctx, n1, n2);
}

}  // namespace mutt
