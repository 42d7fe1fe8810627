#include "mutt/printer.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mutt {

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{
      "sort",    "isolated", "irrelevant", "restricted", "positive", "negative", "constructor",
      "observation", "eliminator", "builder", "rewrite", "def", "check", "normalize", "fun",
      "Pi",      "Univ",     "on",         "rec",        "in",       "with",     "via",
      "tau",     "as",       "include"};
  return k;
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '^';
}

std::string sanitize(const std::string& hint) {
  if (hint.empty() || hint == "_" || !is_identifier(hint) || is_keyword(hint) ||
      std::isdigit(static_cast<unsigned char>(hint[0])))
    return "x";
  return hint;
}

std::string fresh(const std::string& hint, const std::vector<std::string>& scope,
                  const std::set<std::string>& reserved) {
  std::string base = sanitize(hint);
  auto taken = [&](const std::string& n) {
    return reserved.count(n) || std::find(scope.begin(), scope.end(), n) != scope.end();
  };
  if (!taken(base)) return base;
  for (int k = 1;; ++k) {
    std::string c = base + std::to_string(k);
    if (!taken(c)) return c;
  }
}

class TermPrinter {
 public:
  TermPrinter(std::vector<std::string> names, const std::set<std::string>& reserved)
      : names_(std::move(names)), reserved_(reserved) {}

  // prec: 0 top level, 1 head of an application, 2 argument.
  void print(std::ostream& os, const TermP& t, int prec) {
    if (const auto* v = t->as<Var>()) {
      if (v->index < names_.size())
        os << names_[names_.size() - 1 - v->index];
      else
        os << "#" << v->index;
      return;
    }
    if (const auto* u = t->as<Univ>()) {
      os << "Univ " << u->sort << " " << u->level;
      return;
    }
    if (const auto* in = t->as<Inert>()) {
      if (in->args.empty()) {
        os << in->name;
        return;
      }
      open(os, prec >= 1);
      os << in->name;
      for (const auto& a : in->args) {
        os << " ";
        print(os, a, 2);
      }
      close(os, prec >= 1);
      return;
    }
    if (const auto* ac = t->as<Active>()) {
      open(os, prec >= 1);
      os << ac->name;
      for (const auto& a : ac->params) {
        os << " ";
        print(os, a, 2);
      }
      os << " ";
      print(os, ac->scrut, 2);
      close(os, prec >= 1);
      return;
    }
    if (t->is<App>()) {
      std::vector<TermP> args;
      TermP h = t;
      while (const auto* a = h->as<App>()) {
        args.push_back(a->arg);
        h = a->fn;
      }
      std::reverse(args.begin(), args.end());
      open(os, prec >= 2);
      print(os, h, 1);
      for (const auto& a : args) {
        os << " ";
        print(os, a, 2);
      }
      close(os, prec >= 2);
      return;
    }
    if (const auto* lam = t->as<Lam>()) {
      open(os, prec >= 1);
      os << "fun ";
      binder(os, lam->dom, occurs_free(lam->body, 0));
      os << " => ";
      print(os, lam->body, 0);
      names_.pop_back();
      close(os, prec >= 1);
      return;
    }
    const auto& pi = std::get<Pi>(t->node);
    open(os, prec >= 1);
    os << "Pi ";
    binder(os, pi.dom, occurs_free(pi.cod, 0));
    os << " -> ";
    print(os, pi.cod, 0);
    names_.pop_back();
    close(os, prec >= 1);
  }

  // Prints "(x : A @ s # i)" and pushes the chosen name.
  void binder(std::ostream& os, const Binder& b, bool used) {
    std::string n = used ? fresh(b.name, names_, reserved_) : "_";
    os << "(" << n << " : ";
    print(os, b.type, 0);
    os << " @ " << b.sort << " # " << b.level << ")";
    names_.push_back(n);
  }

  std::vector<std::string>& names() { return names_; }

 private:
  static void open(std::ostream& os, bool p) {
    if (p) os << "(";
  }
  static void close(std::ostream& os, bool p) {
    if (p) os << ")";
  }

  std::vector<std::string> names_;
  const std::set<std::string>& reserved_;
};

std::string term_str(const TermP& t, const std::vector<std::string>& names,
                     const std::set<std::string>& reserved, int prec = 0) {
  std::ostringstream os;
  TermPrinter(names, reserved).print(os, t, prec);
  return os.str();
}

std::set<std::string> signature_names(const Signature& sig, const SignatureEntry* extra) {
  std::set<std::string> out;
  auto add_decl = [&](const ConstantDecl& d) { out.insert(d.name); };
  auto add_entry = [&](const SignatureEntry& e) {
    std::visit(
        [&](const auto& x) {
          using E = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<E, PositiveType>) {
            add_decl(x.type);
            for (const auto& c : x.constructors) add_decl(c);
          } else if constexpr (std::is_same_v<E, NegativeType>) {
            add_decl(x.type);
            for (const auto& o : x.observations) add_decl(o);
          } else {
            add_decl(x.decl);
          }
        },
        e);
  };
  for (const auto& e : sig.entries()) add_entry(*e);
  if (extra) add_entry(*extra);
  return out;
}

std::string tel_str(const Context& tel, std::vector<std::string>& names,
                    const std::set<std::string>& reserved) {
  std::ostringstream os;
  for (const auto& b : tel) {
    std::string n = fresh(b.name, names, reserved);
    os << " (" << n << " : " << term_str(b.type, names, reserved) << " @ " << b.sort << " # "
       << b.level << ")";
    names.push_back(n);
  }
  return os.str();
}

std::string var_name(const TermP& t, const std::vector<std::string>& names,
                     const std::set<std::string>& reserved) {
  return term_str(t, names, reserved, 2);
}

std::string meta_str(const MetaVar& q, const std::vector<std::string>& lin,
                     const std::set<std::string>& reserved) {
  std::string s = "?" + lin[lin.size() - 1 - q.var];
  if (q.rec) {
    s += "{";
    for (std::size_t i = 0; i < q.rec->size(); ++i) {
      if (i) s += " ";
      s += term_str((*q.rec)[i], lin, reserved, 2);
    }
    s += "}";
  }
  return s;
}

std::string rule_str(const RewriteRule& r, const std::set<std::string>& reserved) {
  std::ostringstream os;
  std::vector<std::string> lin;
  std::string lin_tel = tel_str(r.delta_lin, lin, reserved);

  std::vector<std::string> recs;
  auto note_rec = [&](const MetaVar& q) {
    if (q.rec) recs.push_back(lin[lin.size() - 1 - q.var] + "^rec");
  };
  if (const auto* h = std::get_if<HeadPat>(&r.pat)) {
    for (const auto& q : h->args) note_rec(q);
  } else {
    note_rec(std::get<PiPat>(r.pat).cod);
  }

  const bool linear = context_eq(r.delta, r.delta_lin) &&
                      subst_eq(r.renaming, id_subst(static_cast<std::uint32_t>(r.delta_lin.size())));
  std::vector<std::string> delta;
  std::string delta_tel;
  if (linear) {
    delta = lin;
  } else {
    std::set<std::string> res = reserved;
    res.insert(recs.begin(), recs.end());
    delta_tel = tel_str(r.delta, delta, res);
  }

  os << "  rewrite " << r.head;
  for (const auto& x : r.param_vars) os << " " << var_name(x, lin, reserved);
  if (const auto* h = std::get_if<HeadPat>(&r.pat)) {
    os << " " << h->name;
    for (const auto& q : h->args) os << " " << meta_str(q, lin, reserved);
  } else {
    const auto& p = std::get<PiPat>(r.pat);
    os << " Pi @ " << p.sort << " # " << p.level << " " << meta_str(p.dom, lin, reserved) << " "
       << meta_str(p.cod, lin, reserved);
  }
  std::vector<std::string> rhs_names = delta;
  rhs_names.insert(rhs_names.end(), recs.begin(), recs.end());
  os << "\n    ~> " << term_str(r.rhs, rhs_names, reserved) << "\n    in" << lin_tel;
  if (!linear) {
    os << "\n    with" << delta_tel << "\n    via";
    for (const auto& s : r.renaming) os << " " << var_name(s, delta, reserved);
  }
  if (r.tau) {
    os << "\n    tau";
    for (const auto& t : *r.tau) os << " " << var_name(t, lin, reserved);
  }
  os << "\n";
  return os.str();
}

std::string annotated(const TermP& t, const SortName& s, Level l, const std::vector<std::string>& names,
                      const std::set<std::string>& reserved) {
  return term_str(t, names, reserved) + " @ " + s + " # " + std::to_string(l);
}

std::string inert_decl_str(const char* kw, const ConstantDecl& d, const std::set<std::string>& reserved) {
  std::vector<std::string> names;
  std::string s = std::string(kw) + " " + d.name + tel_str(d.params, names, reserved);
  if (!d.dom.empty()) s += " rec" + tel_str(d.dom, names, reserved);
  return s + " : " + term_str(d.cod, names, reserved);
}

}  // namespace

bool is_keyword(const std::string& s) { return keywords().count(s) > 0; }

bool is_identifier(const std::string& s) {
  return !s.empty() && s[0] != '\'' && s[0] != '^' && std::all_of(s.begin(), s.end(), ident_char);
}

std::vector<std::string> context_names(const Context& ctx, const std::set<std::string>& reserved) {
  std::vector<std::string> names;
  for (const auto& b : ctx) names.push_back(fresh(b.name, names, reserved));
  return names;
}

void collect_constants(const TermP& t, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Lam>) {
          collect_constants(n.dom.type, out);
          collect_constants(n.body, out);
        } else if constexpr (std::is_same_v<N, Pi>) {
          collect_constants(n.dom.type, out);
          collect_constants(n.cod, out);
        } else if constexpr (std::is_same_v<N, App>) {
          collect_constants(n.fn, out);
          collect_constants(n.arg, out);
        } else if constexpr (std::is_same_v<N, Inert>) {
          out.insert(n.name);
          for (const auto& a : n.args) collect_constants(a, out);
        } else if constexpr (std::is_same_v<N, Active>) {
          out.insert(n.name);
          for (const auto& a : n.params) collect_constants(a, out);
          collect_constants(n.scrut, out);
        }
      },
      t->node);
}

std::string print_term(const TermP& t, const std::vector<std::string>& names) {
  std::set<std::string> reserved;
  collect_constants(t, reserved);
  return term_str(t, names, reserved);
}

std::string print_term(const TermP& t, const std::vector<std::string>& names,
                       const std::set<std::string>& reserved) {
  return term_str(t, names, reserved);
}

std::string print_telescope(const Context& tel, std::vector<std::string>& names,
                            const std::set<std::string>& reserved) {
  std::string s = tel_str(tel, names, reserved);
  return s.empty() ? s : s.substr(1);
}

std::string print_rule(const RewriteRule& r, const Signature& sig) {
  return rule_str(r, signature_names(sig, nullptr));
}

std::string print_entry(const SignatureEntry& e, const Signature& sig) {
  const auto reserved = signature_names(sig, &e);
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using E = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<E, PositiveType>) {
          os << inert_decl_str("positive", x.type, reserved) << " {\n";
          for (const auto& c : x.constructors) os << "  " << inert_decl_str("constructor", c, reserved) << "\n";
          os << "}\n";
        } else if constexpr (std::is_same_v<E, NegativeType>) {
          std::vector<std::string> names;
          os << "negative " << x.type.name << tel_str(x.type.params, names, reserved) << " : "
             << term_str(x.type.cod, names, reserved);
          std::string p = x.observations.empty() ? "p" : x.observations.front().scrutinee().name;
          p = fresh(p, names, reserved);
          os << " as " << p << " {\n";
          names.push_back(p);
          for (const auto& o : x.observations)
            os << "  observation " << o.name << " : "
               << annotated(o.cod, o.codsort, o.codlevel, names, reserved) << "\n";
          os << "}\n";
        } else if constexpr (std::is_same_v<E, Eliminator>) {
          std::vector<std::string> names;
          const auto& d = x.decl;
          os << "eliminator " << d.name << tel_str(d.params, names, reserved) << " on";
          os << tel_str(d.dom, names, reserved);
          os << " : " << annotated(d.cod, d.codsort, d.codlevel, names, reserved) << " {\n";
          for (const auto& r : x.rules) os << rule_str(r, reserved);
          os << "}\n";
        } else {
          os << inert_decl_str("builder", x.decl, reserved) << " {\n";
          for (const auto& r : x.rules) os << rule_str(r, reserved);
          os << "}\n";
        }
      },
      e);
  return os.str();
}

std::string print_sort(const SortInfo& s) {
  std::string out = "sort " + s.name;
  if (s.isolated) out += " isolated";
  if (s.restricted) out += " restricted";
  if (s.irrelevant) out += " irrelevant";
  return out;
}

std::string print_parametrization(const Parametrization& p) {
  std::ostringstream os;
  bool any = false;
  for (const auto& s : p.sorts) {
    if (s.is_type) continue;
    os << print_sort(s) << "\n";
    any = true;
  }
  for (const auto& e : p.sig.entries()) {
    if (any) os << "\n";
    any = true;
    os << print_entry(*e, p.sig);
  }
  return os.str();
}

}  // namespace mutt
