#include <doctest.h>

#include "mutt/typing.hpp"
#include "support.hpp"

using namespace mutt;

namespace {

const Development& base() {
  static const Development d = test::load_text(test::kArith);
  return d;
}

std::string error_tag(const std::string& src) {
  try {
    infer(base().param, {}, test::term(base(), src));
  } catch (const KernelError& e) {
    return e.tag();
  }
  return "";
}

}  // namespace

TEST_CASE("universes live one level up in Type") {
  auto r = infer(base().param, {}, mk_univ("Type", 0));
  CHECK(alpha_eq(r.type, mk_univ("Type", 1)));
  CHECK(r.sort == kTypeSort);
  CHECK(r.level == 2);
}

TEST_CASE("Pi takes the codomain sort and the maximum level") {
  Typer ty(base().param);
  auto [s, i] = ty.infer_type({}, test::term(base(), "Pi (A : Univ Type 0) -> A -> A"));
  CHECK(s == kTypeSort);
  CHECK(i == 1);
  auto [s2, i2] = ty.infer_type({}, test::term(base(), "Nat -> Nat"));
  CHECK(s2 == kTypeSort);
  CHECK(i2 == 0);
}

TEST_CASE("constants are typed by their declarations") {
  auto r = infer(base().param, {}, test::term(base(), "cons Nat 0 (nil Nat)"));
  CHECK(alpha_eq(r.type, mk_inert("List", {mk_inert("Nat")})));
  auto e = infer(base().param, {}, test::term(base(), "fun (A : Univ Type 0) (x : A) => refl A x"));
  CHECK(e.sort == kTypeSort);
}

TEST_CASE("ill-typed terms are rejected with a tag") {
  CHECK(error_tag("S true") == tag::kTypeMismatch);
  CHECK(error_tag("0 0") == tag::kNotAFunction);
  CHECK(error_tag("fun (x : Nat @ Type # 3) => x") == tag::kLevelMismatch);
  CHECK(error_tag("fun (x : Nat @ Prop # 0) => x") == tag::kSortTable);
  CHECK(error_tag("List 0") == tag::kTypeMismatch);
  CHECK(error_tag("plus 0 0") == "");
}

TEST_CASE("a binder annotated with the wrong sort") {
  Development exc = prelude_development("exc.mutt");
  REQUIRE(exc.ok());
  try {
    infer(exc.param, {}, test::term(exc, "fun (x : Bool_E @ Type # 0) => x"));
    FAIL("accepted");
  } catch (const KernelError& e) {
    CHECK(e.tag() == std::string(tag::kSortMismatch));
  }
}

TEST_CASE("check against an expected type uses conversion") {
  const auto& p = base().param;
  TermP two = test::term(base(), "S (S 0)");
  CHECK(check(p, {}, two, test::term(base(), "(fun (_ : Bool) => Nat) true"), kTypeSort).empty());
  auto ds = check(p, {}, two, mk_inert("Bool"), kTypeSort);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].tag == tag::kTypeMismatch);
}

TEST_CASE("contexts and substitutions") {
  const auto& p = base().param;
  Context ok{Binder{mk_univ("Type", 0), kTypeSort, 1, "A"}, Binder{mk_var(0), kTypeSort, 0, "x"}};
  CHECK(check_context(p, ok).empty());
  Context bad{Binder{mk_var(0), kTypeSort, 0, "x"}};
  CHECK_FALSE(check_context(p, bad).empty());
  CHECK(check_substitution(p, {}, {mk_inert("Nat"), mk_inert("0")}, ok).empty());
  CHECK_FALSE(check_substitution(p, {}, {mk_inert("Nat"), mk_inert("true")}, ok).empty());
}

TEST_CASE("variables out of scope are unbound") {
  auto ds = check(base().param, {}, mk_var(0), mk_inert("Nat"), kTypeSort);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].tag == tag::kUnbound);
}

TEST_CASE("the rules of the prelude pass rule validity") {
  for (const char* file : {"base.mutt", "exc.mutt", "prop.mutt"}) {
    Development dev = prelude_development(file);
    REQUIRE(dev.ok());
    for (const auto& e : dev.param.sig.entries())
      if (const auto* rules = entry_rules(*e))
        for (const auto& r : *rules) {
          auto ds = check_rewrite_rule(dev.param, r);
          CHECK_MESSAGE(ds.empty(), r.head);
        }
  }
}
