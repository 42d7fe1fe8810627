#include <doctest.h>

#include "mutt/printer.hpp"
#include "mutt/reduction.hpp"
#include "support.hpp"

using namespace mutt;

namespace {

const Development& arith() {
  static const Development d = test::load_text(test::kArith);
  return d;
}

}  // namespace

TEST_CASE("beta reduction reaches weak head normal form") {
  const auto& dev = arith();
  REQUIRE(dev.ok());
  TermP t = test::term(dev, "(fun (x : Nat) => S x) 0");
  CHECK(classify(dev.param.sig, t).kind == WhnfKind::Redex);
  CHECK(classify(dev.param.sig, t).detail == "beta");
  TermP w = whnf(dev.param.sig, t);
  CHECK(alpha_eq(w, mk_inert("S", {mk_inert("0")})));
  CHECK(classify(dev.param.sig, w).kind == WhnfKind::Canonical);
  CHECK(classify(dev.param.sig, w).detail == "S");
}

TEST_CASE("whnf stops at the head, normalize goes under constructors") {
  const auto& dev = arith();
  TermP t = test::term(dev, "plus (S 0) (S 0)");
  TermP w = whnf(dev.param.sig, t);
  const auto* s = w->as<Inert>();
  REQUIRE(s);
  CHECK(s->name == "S");
  CHECK_FALSE(test::numeral_value(w) == std::optional<std::uint64_t>(2));
  CHECK(test::numeral_value(normalize(dev.param.sig, t)) == std::optional<std::uint64_t>(2));
}

TEST_CASE("eliminators on variables are neutral") {
  const auto& dev = arith();
  TermP t = test::term(dev, "fun (n : Nat) => nat_elim (fun (_ : Nat) => Nat) 0 (fun (k r : Nat) => k) n");
  const auto* lam = t->as<Lam>();
  REQUIRE(lam);
  CHECK(classify(dev.param.sig, lam->body).kind == WhnfKind::Neutral);
  CHECK(alpha_eq(whnf(dev.param.sig, lam->body), lam->body));
}

TEST_CASE("fire matches only canonical scrutinees") {
  const auto& dev = arith();
  const auto& sig = dev.param.sig;
  TermP motive = test::term(dev, "fun (_ : Nat) => Nat");
  TermP step = test::term(dev, "fun (k r : Nat) => S r");
  std::vector<TermP> params{motive, mk_inert("0"), step};
  auto zero = fire(sig, "nat_elim", params, mk_inert("0"));
  REQUIRE(zero);
  CHECK(alpha_eq(*zero, mk_inert("0")));
  auto succ = fire(sig, "nat_elim", params, mk_inert("S", {mk_inert("0")}));
  REQUIRE(succ);
  // pS n (nat_elim P p0 pS n)
  CHECK(test::numeral_value(normalize(sig, *succ)) == std::optional<std::uint64_t>(1));
  CHECK_FALSE(fire(sig, "nat_elim", params, mk_var(0)));
  CHECK(scrutinee_head(mk_pi(Binder{mk_inert("Nat"), kTypeSort, 0, "x"}, mk_inert("Nat"))) ==
        std::optional<std::string>("Pi"));
}

TEST_CASE("occ_rec types the recursive call") {
  const auto& sig = arith().param.sig;
  const auto* d = sig.decl("nat_elim");
  const auto* rule = sig.rule_for("nat_elim", "S");
  REQUIRE(d);
  REQUIRE(rule);
  Context rec = occ_rec(*d, rule->rule->pat);
  REQUIRE(rec.size() == 1);
  // P n, in Δ_lin = (P, p0, pS, n).
  CHECK(alpha_eq(rec[0].type, mk_app(mk_var(3), mk_var(0))));
  Subst s = occ_rec_sub("nat_elim", rule->rule->pat);
  REQUIRE(s.size() == 1);
  CHECK(alpha_eq(s[0], mk_active("nat_elim", {mk_var(3), mk_var(2), mk_var(1)}, mk_var(0))));
  CHECK(alpha_eq(erase_pattern(rule->rule->pat), mk_inert("S", {mk_var(0)})));
}

TEST_CASE("raise on Pi produces a lambda annotated like the matched binder") {
  Development dev = prelude_development("exc.mutt");
  REQUIRE(dev.ok());
  TermP t = test::term(dev, "raise (Pi (b : Bool_E) -> Bool_E)");
  TermP nf = normalize(dev.param.sig, t);
  const auto* lam = nf->as<Lam>();
  REQUIRE(lam);
  CHECK(lam->dom.sort == "exc");
  CHECK(lam->dom.level == 0);
  CHECK(alpha_eq(lam->body, mk_inert("bool_exn")));
}

TEST_CASE("fuel bounds reduction of non-terminating terms") {
  // (fun x => x x) (fun x => x x) cannot be typed, but reduction must still stop.
  Binder b{mk_inert("Nat"), kTypeSort, 0, "x"};
  TermP self = mk_lam(b, mk_app(mk_var(0), mk_var(0)));
  TermP omega = mk_app(self, self);
  Signature sig;
  Fuel fuel(1000);
  CHECK_THROWS_AS(whnf(sig, omega, fuel), FuelExhausted);
  CHECK(fuel.used() >= 1000);
  try {
    Fuel f2(10);
    whnf(sig, omega, f2);
  } catch (const KernelError& e) {
    CHECK(e.tag() == std::string(tag::kFuel));
  }
}

TEST_CASE("deep normalization of listrec-derived terms") {
  const auto& dev = arith();
  for (std::uint64_t n = 0; n < 6; ++n) {
    std::string num = "0";
    for (std::uint64_t i = 0; i < n; ++i) num = "S (" + num + ")";
    TermP t = test::term(dev, "sum (rep (" + num + ") (S (S 0)))");
    CHECK(test::numeral_value(normalize(dev.param.sig, t)) == std::optional<std::uint64_t>(2 * n));
  }
}
