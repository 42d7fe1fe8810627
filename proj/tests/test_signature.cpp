#include <doctest.h>

#include <algorithm>

#include "mutt/check.hpp"
#include "mutt/linearizable.hpp"
#include "support.hpp"

using namespace mutt;

namespace {

std::string rejected(const std::string& src) { return test::first_error_tag(test::load_text(src)); }

const char* const kIsolated = "include \"base.mutt\"\nsort Ax isolated\n";

}  // namespace

TEST_CASE("eliminator heads cover Pi and the universe's type constants") {
  Development dev = prelude_development("exc.mutt");
  REQUIRE(dev.ok());
  auto heads = eliminator_heads(dev.param.sig, *dev.param.sig.decl("raise"));
  std::sort(heads.begin(), heads.end());
  CHECK(heads == std::vector<std::string>{"Bool_E", "Deamon", "Pi"});
  auto heads1 = eliminator_heads(dev.param.sig, *dev.param.sig.decl("raise1"));
  std::sort(heads1.begin(), heads1.end());
  CHECK(heads1 == std::vector<std::string>{"BoxU_exc", "Pi"});
  auto ctors = eliminator_heads(dev.param.sig, *dev.param.sig.decl("catchB"));
  CHECK(ctors == std::vector<std::string>{"true_E", "false_E", "bool_exn"});
  CHECK(react(dev.param.sig, "raise", "Pi"));
  CHECK_FALSE(react(dev.param.sig, "catchB", "Pi"));
}

TEST_CASE("progress and determinism over rule lists") {
  Development dev = prelude_development("base.mutt");
  const auto* e = std::get_if<Eliminator>(dev.param.sig.entries()[9].get());
  REQUIRE(e);
  REQUIRE(e->decl.name == "listrec");
  CHECK(check_progress({"nil", "cons"}, {"listrec"}, e->rules));
  Diagnostics out;
  CHECK_FALSE(check_progress({"nil", "cons", "snoc"}, {"listrec"}, e->rules, &out));
  REQUIRE(out.size() == 1);
  CHECK(out[0].tag == tag::kProgress);
  CHECK(check_determinism(e->rules));
  auto doubled = e->rules;
  doubled.push_back(e->rules[0]);
  CHECK_FALSE(check_determinism(doubled));
}

TEST_CASE("singleton criterion") {
  Development dev = prelude_development("prop.mutt");
  REQUIRE(dev.ok());
  auto positive = [&](const std::string& k) {
    const auto& entry = *dev.param.sig.entries()[dev.param.sig.lookup(k)->entry];
    return std::get<PositiveType>(entry);
  };
  CHECK(is_singleton(dev.param, positive("Bot_P")));
  CHECK(is_singleton(dev.param, positive("And_P")));
  CHECK_FALSE(is_singleton(dev.param, positive("Bool_P")));
  // Data in Type makes a one-constructor Prop type non-singleton.
  CHECK(rejected("include \"prop.mutt\"\n"
                 "positive Sq : Univ Prop 0 { constructor sq (n : Nat) : Sq }\n"
                 "eliminator sq_elim (P : Sq -> Univ Type 0) (h : Pi (n : Nat) -> P (sq n)) on (x : Sq) : P x {\n"
                 "  rewrite sq_elim P h sq ?n ~> h n in (P : Sq -> Univ Type 0) (h : Pi (n : Nat) -> P (sq n)) (n : Nat)\n"
                 "}\n") == tag::kSingleton);
}

TEST_CASE("sort table") {
  CHECK(rejected("sort Type\n") == tag::kSortTable);
  CHECK(rejected("sort A\nsort A\n") == tag::kSortTable);
  CHECK(rejected("positive K : Univ Nope 0 { }\n") != "");
  Parametrization p;
  p.sorts.push_back(SortInfo{"Ty2", true, false, false, false});
  CHECK(has_error(check_sorts(p)));
}

TEST_CASE("constructors must build their own type") {
  CHECK(rejected("include \"base.mutt\"\n"
                 "positive K : Univ Type 0 { constructor k : Nat }\n") == tag::kPos3);
  CHECK(rejected("include \"base.mutt\"\n"
                 "positive K : Univ Type 0 { constructor k rec (f : Nat) : K }\n") == tag::kPos3);
  CHECK(rejected("include \"base.mutt\"\n"
                 "positive Nat : Univ Type 0 { }\n") == tag::kOrder);
}

TEST_CASE("no new types in a universe that is already eliminated") {
  Development exc = prelude_development("exc.mutt");
  REQUIRE(exc.ok());
  Development late = test::extend(exc.param, "positive Late : Univ exc 0 { constructor late : Late }\n");
  CHECK(test::first_error_tag(late) == tag::kPos1);
  Development ok = test::extend(exc.param, "positive Later : Univ exc 2 { constructor later : Later }\n");
  CHECK(ok.ok());
}

TEST_CASE("isolation") {
  CHECK(rejected(std::string(kIsolated) + "negative R : Univ Ax 0 as p { observation o : Nat }\n") == tag::kIsolation);
  CHECK(rejected(std::string(kIsolated) +
                 "positive U : Univ Ax 0 { constructor u : U }\n"
                 "eliminator e (P : U -> Univ Ax 0) (h : P u) on (x : U) : P x {\n"
                 "  rewrite e P h u ~> h in (P : U -> Univ Ax 0) (h : P u)\n"
                 "}\n") == "");
  // An isolated codomain may skip rules altogether.
  CHECK(rejected(std::string(kIsolated) +
                 "positive U : Univ Ax 0 { constructor u : U }\n"
                 "eliminator e (P : U -> Univ Ax 0) on (x : U) : P x { }\n") == "");
  CHECK(rejected("include \"base.mutt\"\nsort Ax\n"
                 "positive U : Univ Ax 0 { constructor u : U }\n"
                 "eliminator e (P : U -> Univ Ax 0) on (x : U) : P x { }\n") == tag::kProgress);
}

TEST_CASE("rule validity catches each clause") {
  const std::string head =
      "include \"base.mutt\"\n"
      "eliminator f (P : Bool -> Univ Type 0) (x : P true) (y : P false) on (b : Bool) : P b {\n";
  const std::string ctx = " in (P : Bool -> Univ Type 0) (x : P true) (y : P false)\n";
  // Right-hand side of the wrong type.
  CHECK(rejected(head + "  rewrite f P x y true ~> y" + ctx + "  rewrite f P x y false ~> y" + ctx + "}\n") ==
        tag::kRewRhs);
  // A variable used twice on the left.
  CHECK(rejected(head + "  rewrite f P x x true ~> x in (P : Bool -> Univ Type 0) (x : P true)\n"
                        "  rewrite f P x y false ~> y" + ctx + "}\n") != "");
  // Pattern of the wrong type.
  CHECK(rejected(head + "  rewrite f P x y 0 ~> x" + ctx + "  rewrite f P x y false ~> y" + ctx + "}\n") != "");
}

TEST_CASE("linearizability conditions") {
  Development dev = prelude_development("base.mutt");
  const auto* j = dev.param.sig.rule_for("J", "refl");
  REQUIRE(j);
  CHECK(check_linearizable(dev.param.sig, *j->rule));
  RewriteRule twice = *j->rule;
  twice.param_vars[2] = twice.param_vars[1];
  Diagnostics out;
  CHECK_FALSE(check_linearizable(dev.param.sig, twice, &out));
  REQUIRE_FALSE(out.empty());
  CHECK(out[0].tag == tag::kLinearA);
  RewriteRule bad_tau = *j->rule;
  bad_tau.tau = Subst{mk_var(6), mk_var(5), mk_var(2), mk_var(1)};
  out.clear();
  CHECK_FALSE(check_linearizable(dev.param.sig, bad_tau, &out));
  REQUIRE_FALSE(out.empty());
  CHECK(out[0].tag == tag::kLinearB2);
}

TEST_CASE("unifier") {
  Unifier u(3);
  CHECK(u.unify(mk_inert("S", {mk_var(0)}), mk_inert("S", {mk_var(1)})));
  CHECK(alpha_eq(u.resolve(mk_var(0)), u.resolve(mk_var(1))));
  CHECK_FALSE(u.unify(mk_inert("S", {mk_var(2)}), mk_inert("0")));
  Unifier occurs(1);
  CHECK_FALSE(occurs.unify(mk_var(0), mk_inert("S", {mk_var(0)})));
}

TEST_CASE("check_signature stops at the first rejected entry") {
  Development dev = prelude_development("base.mutt");
  CHECK(check_signature(dev.param).empty());
  Parametrization broken = dev.param;
  broken.sig = Signature{};
  const auto& es = dev.param.sig.entries();
  for (std::size_t i = 0; i < es.size(); ++i)
    if (entry_name(*es[i]) != "Nat") broken.sig.add(*es[i]);
  auto ds = check_signature(broken);
  REQUIRE_FALSE(ds.empty());
  CHECK(ds[0].entry.has_value());
}
