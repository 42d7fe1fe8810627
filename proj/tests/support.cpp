#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mutt/ast.hpp"
#include "mutt/elaborate.hpp"

namespace mutt::test {

std::string source_path(const std::string& rel) { return std::string(MUTT_SOURCE_DIR) + "/" + rel; }

std::string read_source(const std::string& rel) {
  std::ifstream in(source_path(rel), std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + rel);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Development load_text(const std::string& text, const LoadOptions& opts) {
  LoadOptions o = opts;
  o.resolver = prelude_resolver();
  return load_string(text, "<test>", o);
}

Development extend(const Parametrization& p, const std::string& text, const LoadOptions& opts) {
  return extend_development(p, SourceText{"<test>", "<test>", text}, opts);
}

TermP term(const Development& dev, const std::string& src) {
  Elaborator el(dev.param, dev.defs, default_check_options(dev.param));
  return el.closed_term(ast::parse_term(src, "<term>"));
}

const Diagnostic* first_error(const Development& dev) {
  for (const auto& d : dev.diagnostics)
    if (d.severity == Severity::Error) return &d;
  return nullptr;
}

std::string first_error_tag(const Development& dev) {
  const auto* d = first_error(dev);
  return d ? d->tag : "";
}

const char* const kArith = R"(
include "base.mutt"

def plus : Nat -> Nat -> Nat :=
  fun (m n : Nat) => nat_elim (fun (_ : Nat) => Nat) n (fun (k r : Nat) => S r) m
def mult : Nat -> Nat -> Nat :=
  fun (m n : Nat) => nat_elim (fun (_ : Nat) => Nat) 0 (fun (k r : Nat) => plus n r) m
def pred : Nat -> Nat :=
  fun (m : Nat) => nat_elim (fun (_ : Nat) => Nat) 0 (fun (k r : Nat) => k) m
def double : Nat -> Nat :=
  fun (m : Nat) => nat_elim (fun (_ : Nat) => Nat) 0 (fun (k r : Nat) => S (S r)) m
def rep : Nat -> Nat -> List Nat :=
  fun (n x : Nat) => nat_elim (fun (_ : Nat) => List Nat) (nil Nat) (fun (k : Nat) (r : List Nat) => cons Nat x r) n
def len : List Nat -> Nat :=
  fun (l : List Nat) => listrec Nat (fun (_ : List Nat) => Nat) 0 (fun (a : Nat) (t : List Nat) (r : Nat) => S r) l
def sum : List Nat -> Nat :=
  fun (l : List Nat) => listrec Nat (fun (_ : List Nat) => Nat) 0 (fun (a : Nat) (t : List Nat) (r : Nat) => plus a r) l
def iszero : Nat -> Bool :=
  fun (m : Nat) => nat_elim (fun (_ : Nat) => Bool) true (fun (k : Nat) (r : Bool) => false) m
def ifz : Nat -> Nat -> Nat -> Nat :=
  fun (m a b : Nat) => bool_elim (fun (_ : Bool) => Nat) a b (iszero m)
def pfst : Nat -> Nat -> Nat :=
  fun (a b : Nat) => fst Nat (fun (_ : Nat) => Nat) (pair Nat (fun (_ : Nat) => Nat) a b)
def psnd : Nat -> Nat -> Nat :=
  fun (a b : Nat) => snd Nat (fun (_ : Nat) => Nat) (pair Nat (fun (_ : Nat) => Nat) a b)
def transport : Nat -> Nat -> Nat :=
  fun (a b : Nat) => J Nat a a (fun (y : Nat) (e : Id Nat a y) => Nat) b (refl Nat a)
def unboxn : Nat -> Nat :=
  fun (a : Nat) => boxelim Nat (fun (_ : Box Nat) => Nat) (fun (z : Nat) => z) (box Nat a)
)";

std::uint64_t eval(const NatExpr& e) {
  auto k = [&](std::size_t i) { return eval(e.kids[i]); };
  switch (e.kind) {
    case NatExpr::Zero: return 0;
    case NatExpr::Succ: return k(0) + 1;
    case NatExpr::Plus: return k(0) + k(1);
    case NatExpr::Mult: return k(0) * k(1);
    case NatExpr::Pred: return k(0) == 0 ? 0 : k(0) - 1;
    case NatExpr::Double: return 2 * k(0);
    case NatExpr::Len: return k(0);         // len (rep n x) = n
    case NatExpr::Sum: return k(0) * k(1);  // sum (rep n x) = n * x
    case NatExpr::Ifz: return k(0) == 0 ? k(1) : k(2);
    case NatExpr::Fst: return k(0);
    case NatExpr::Snd: return k(1);
    case NatExpr::Transport: return k(1);
    case NatExpr::Unbox: return k(0);
  }
  return 0;
}

std::string to_source(const NatExpr& e) {
  auto k = [&](std::size_t i) { return "(" + to_source(e.kids[i]) + ")"; };
  switch (e.kind) {
    case NatExpr::Zero: return "0";
    case NatExpr::Succ: return "S " + k(0);
    case NatExpr::Plus: return "plus " + k(0) + " " + k(1);
    case NatExpr::Mult: return "mult " + k(0) + " " + k(1);
    case NatExpr::Pred: return "pred " + k(0);
    case NatExpr::Double: return "double " + k(0);
    case NatExpr::Len: return "len (rep " + k(0) + " 0)";
    case NatExpr::Sum: return "sum (rep " + k(0) + " " + k(1) + ")";
    case NatExpr::Ifz: return "ifz " + k(0) + " " + k(1) + " " + k(2);
    case NatExpr::Fst: return "pfst " + k(0) + " " + k(1);
    case NatExpr::Snd: return "psnd " + k(0) + " " + k(1);
    case NatExpr::Transport: return "transport " + k(0) + " " + k(1);
    case NatExpr::Unbox: return "unboxn " + k(0);
  }
  return "";
}

namespace {

std::size_t arity(NatExpr::Kind k) {
  switch (k) {
    case NatExpr::Zero: return 0;
    case NatExpr::Succ:
    case NatExpr::Pred:
    case NatExpr::Double:
    case NatExpr::Len:
    case NatExpr::Unbox: return 1;
    case NatExpr::Ifz: return 3;
    default: return 2;
  }
}

bool within(const NatExpr& e, std::uint64_t cap) {
  for (const auto& k : e.kids)
    if (!within(k, cap)) return false;
  return eval(e) <= cap;
}

NatExpr attempt(std::mt19937& rng, int depth) {
  NatExpr e;
  if (depth <= 0) {
    std::uniform_int_distribution<int> small(0, 3);
    const int n = small(rng);
    for (int i = 0; i < n; ++i) {
      NatExpr s;
      s.kind = NatExpr::Succ;
      s.kids.push_back(std::move(e));
      e = std::move(s);
    }
    return e;
  }
  std::uniform_int_distribution<int> pick(0, NatExpr::Unbox);
  e.kind = static_cast<NatExpr::Kind>(pick(rng));
  for (std::size_t i = 0; i < arity(e.kind); ++i) e.kids.push_back(attempt(rng, depth - 1));
  return e;
}

}  // namespace

NatExpr random_expr(std::mt19937& rng, int depth, std::uint64_t cap) {
  for (;;) {
    NatExpr e = attempt(rng, depth);
    if (within(e, cap)) return e;
  }
}

std::optional<std::uint64_t> numeral_value(const TermP& t) {
  std::uint64_t n = 0;
  const Term* cur = t.get();
  for (;;) {
    const auto* in = cur->as<Inert>();
    if (!in) return std::nullopt;
    if (in->name == "0" && in->args.empty()) return n;
    if (in->name != "S" || in->args.size() != 1) return std::nullopt;
    ++n;
    cur = in->args[0].get();
  }
}

Parametrization permute_rules(const Parametrization& p, std::mt19937* rng) {
  Parametrization out;
  out.sorts = p.sorts;
  for (const auto& e : p.sig.entries()) {
    SignatureEntry copy = *e;
    std::visit(
        [&](auto& x) {
          if constexpr (requires { x.rules; }) {
            if (rng)
              std::shuffle(x.rules.begin(), x.rules.end(), *rng);
            else
              std::reverse(x.rules.begin(), x.rules.end());
          }
        },
        copy);
    out.sig.add(std::move(copy));
  }
  return out;
}

}  // namespace mutt::test
