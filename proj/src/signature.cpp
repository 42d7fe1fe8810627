#include "mutt/signature.hpp"

namespace mutt {

namespace {
const std::vector<std::string> kNone;

bool metavar_eq(const MetaVar& a, const MetaVar& b) {
  if (a.var != b.var || a.rec.has_value() != b.rec.has_value()) return false;
  return !a.rec || subst_eq(*a.rec, *b.rec);
}
}  // namespace

std::string kind_name(ConstKind k) {
  switch (k) {
    case ConstKind::TypeConst: return "type constant";
    case ConstKind::Constructor: return "constructor";
    case ConstKind::Builder: return "builder";
    case ConstKind::Eliminator: return "eliminator";
    case ConstKind::Observation: return "observation";
  }
  return "constant";
}

std::string pattern_head(const Pattern& p) {
  if (const auto* h = std::get_if<HeadPat>(&p)) return h->name;
  return kPiHead;
}

std::optional<Subst> canonical_inverse(const RewriteRule& r) {
  const auto nd = static_cast<std::uint32_t>(r.delta.size());
  const auto nl = static_cast<std::uint32_t>(r.renaming.size());
  Subst tau(nd);
  for (std::uint32_t q = 0; q < nd; ++q) {
    const std::uint32_t j = nd - 1 - q;  // de Bruijn index of Δ position q
    for (std::uint32_t p = 0; p < nl; ++p) {
      const auto* v = r.renaming[p]->as<Var>();
      if (v && v->index == j) {
        tau[q] = mk_var(nl - 1 - p);
        break;
      }
    }
    if (!tau[q]) return std::nullopt;
  }
  return tau;
}

std::string entry_name(const SignatureEntry& e) {
  return std::visit(
      [](const auto& x) -> std::string {
        using E = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<E, PositiveType> || std::is_same_v<E, NegativeType>)
          return x.type.name;
        else
          return x.decl.name;
      },
      e);
}

std::string entry_kind_name(const SignatureEntry& e) {
  switch (e.index()) {
    case 0: return "positive type";
    case 1: return "negative type";
    case 2: return "eliminator";
    default: return "builder";
  }
}

const std::vector<RewriteRule>* entry_rules(const SignatureEntry& e) {
  if (const auto* el = std::get_if<Eliminator>(&e)) return &el->rules;
  if (const auto* b = std::get_if<Builder>(&e)) return &b->rules;
  return nullptr;
}

bool decl_eq(const ConstantDecl& a, const ConstantDecl& b) {
  return a.name == b.name && a.kind == b.kind && context_eq(a.params, b.params) &&
         context_eq(a.dom, b.dom) && alpha_eq(a.cod, b.cod) && a.codsort == b.codsort &&
         a.codlevel == b.codlevel;
}

bool pattern_eq(const Pattern& a, const Pattern& b) {
  if (a.index() != b.index()) return false;
  if (const auto* h = std::get_if<HeadPat>(&a)) {
    const auto& g = std::get<HeadPat>(b);
    if (h->name != g.name || h->args.size() != g.args.size()) return false;
    for (std::size_t i = 0; i < h->args.size(); ++i)
      if (!metavar_eq(h->args[i], g.args[i])) return false;
    return true;
  }
  const auto& p = std::get<PiPat>(a);
  const auto& q = std::get<PiPat>(b);
  return p.sort == q.sort && p.level == q.level && metavar_eq(p.dom, q.dom) &&
         metavar_eq(p.cod, q.cod);
}

bool rule_eq(const RewriteRule& a, const RewriteRule& b) {
  if (a.tau.has_value() != b.tau.has_value()) return false;
  if (a.tau && !subst_eq(*a.tau, *b.tau)) return false;
  return context_eq(a.delta, b.delta) && subst_eq(a.renaming, b.renaming) &&
         context_eq(a.delta_lin, b.delta_lin) && a.head == b.head &&
         subst_eq(a.param_vars, b.param_vars) && pattern_eq(a.pat, b.pat) &&
         alpha_eq(a.rhs, b.rhs);
}

namespace {
bool decls_eq(const std::vector<ConstantDecl>& a, const std::vector<ConstantDecl>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!decl_eq(a[i], b[i])) return false;
  return true;
}
bool rules_eq(const std::vector<RewriteRule>& a, const std::vector<RewriteRule>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!rule_eq(a[i], b[i])) return false;
  return true;
}
}  // namespace

bool entry_eq(const SignatureEntry& a, const SignatureEntry& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using E = std::decay_t<decltype(x)>;
        const auto& y = std::get<E>(b);
        if constexpr (std::is_same_v<E, PositiveType>)
          return decl_eq(x.type, y.type) && decls_eq(x.constructors, y.constructors);
        else if constexpr (std::is_same_v<E, NegativeType>)
          return decl_eq(x.type, y.type) && decls_eq(x.observations, y.observations);
        else
          return decl_eq(x.decl, y.decl) && rules_eq(x.rules, y.rules);
      },
      a);
}

void Signature::index_decl(const ConstantDecl& d, std::size_t entry, const std::string& owner) {
  consts_.emplace(d.name, ConstInfo{&d, entry, owner});
}

void Signature::index_rules(const std::vector<RewriteRule>& rules) {
  for (const auto& r : rules) {
    all_rules_[r.head].push_back(&r);
    auto& by_head = rules_[r.head];
    auto key = pattern_head(r.pat);
    if (!by_head.count(key)) {
      auto inv = r.tau ? r.tau : canonical_inverse(r);
      by_head.emplace(key, IndexedRule{&r, std::move(inv)});
    }
  }
}

void Signature::add(SignatureEntry e) {
  auto ptr = std::make_shared<const SignatureEntry>(std::move(e));
  const std::size_t idx = entries_.size();
  entries_.push_back(ptr);
  std::visit(
      [&](const auto& x) {
        using E = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<E, PositiveType>) {
          index_decl(x.type, idx, "");
          type_consts_.push_back(x.type.name);
          positive_[x.type.name] = true;
          auto& cs = ctors_[x.type.name];
          for (const auto& c : x.constructors) {
            index_decl(c, idx, x.type.name);
            cs.push_back(c.name);
          }
        } else if constexpr (std::is_same_v<E, NegativeType>) {
          index_decl(x.type, idx, "");
          type_consts_.push_back(x.type.name);
          positive_[x.type.name] = false;
          auto& os = obs_[x.type.name];
          for (const auto& o : x.observations) {
            index_decl(o, idx, x.type.name);
            os.push_back(o.name);
          }
        } else if constexpr (std::is_same_v<E, Eliminator>) {
          index_decl(x.decl, idx, "");
          index_rules(x.rules);
        } else {
          std::string owner;
          if (const auto* k = x.decl.cod ? x.decl.cod->template as<Inert>() : nullptr) owner = k->name;
          index_decl(x.decl, idx, owner);
          builders_[owner].push_back(x.decl.name);
          index_rules(x.rules);
        }
      },
      *ptr);
}

const ConstInfo* Signature::lookup(const std::string& name) const {
  auto it = consts_.find(name);
  return it == consts_.end() ? nullptr : &it->second;
}

const ConstantDecl* Signature::decl(const std::string& name) const {
  const auto* i = lookup(name);
  return i ? i->decl : nullptr;
}

const IndexedRule* Signature::rule_for(const std::string& d, const std::string& head) const {
  auto it = rules_.find(d);
  if (it == rules_.end()) return nullptr;
  auto jt = it->second.find(head);
  return jt == it->second.end() ? nullptr : &jt->second;
}

std::vector<const RewriteRule*> Signature::rules_of(const std::string& d) const {
  auto it = all_rules_.find(d);
  return it == all_rules_.end() ? std::vector<const RewriteRule*>{} : it->second;
}

const std::vector<std::string>& Signature::constructors_of(const std::string& k) const {
  auto it = ctors_.find(k);
  return it == ctors_.end() ? kNone : it->second;
}

const std::vector<std::string>& Signature::observations_of(const std::string& k) const {
  auto it = obs_.find(k);
  return it == obs_.end() ? kNone : it->second;
}

const std::vector<std::string>& Signature::builders_of(const std::string& k) const {
  auto it = builders_.find(k);
  return it == builders_.end() ? kNone : it->second;
}

bool Signature::is_positive(const std::string& k) const {
  auto it = positive_.find(k);
  return it != positive_.end() && it->second;
}

bool Signature::is_negative(const std::string& k) const {
  auto it = positive_.find(k);
  return it != positive_.end() && !it->second;
}

bool sort_info_eq(const SortInfo& a, const SortInfo& b) {
  return a.name == b.name && a.is_type == b.is_type && a.isolated == b.isolated &&
         a.restricted == b.restricted && a.irrelevant == b.irrelevant;
}

const SortInfo* Parametrization::sort(const SortName& name) const {
  for (const auto& s : sorts)
    if (s.name == name) return &s;
  return nullptr;
}

bool Parametrization::isolated(const SortName& name) const {
  const auto* s = sort(name);
  return s && s->isolated;
}

std::optional<std::pair<SortName, Level>> type_constant_universe(const ConstantDecl& k) {
  if (!k.cod) return std::nullopt;
  if (const auto* u = k.cod->as<Univ>()) return std::make_pair(u->sort, u->level);
  return std::nullopt;
}

}  // namespace mutt
