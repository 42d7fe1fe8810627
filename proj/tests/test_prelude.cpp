#include <doctest.h>

#include "mutt/check.hpp"
#include "mutt/prelude.hpp"
#include "support.hpp"

using namespace mutt;

TEST_CASE("factories build checked parametrizations") {
  Parametrization base = base_type_theory();
  CHECK(check_signature(base).empty());
  for (auto p : {prop_extension(base), sprop_extension(base), exc_extension(base),
                 axiom_extension(base, "lem", std::string(kLemType))}) {
    CHECK(check_signature(p).empty());
    CHECK(p.sig.size() > base.sig.size());
    CHECK(p.sorts.size() == base.sorts.size() + 1);
  }
}

TEST_CASE("sort flags of the prelude") {
  Parametrization base = base_type_theory();
  CHECK(prop_extension(base).sort("Prop")->restricted);
  CHECK(sprop_extension(base).sort("sProp")->irrelevant);
  CHECK_FALSE(exc_extension(base).isolated("exc"));
  CHECK(axiom_extension(base, "uip", "Unit_uip").isolated("Ax_uip"));
}

TEST_CASE("shipped axiom files come from the template") {
  CHECK(test::read_source("prelude/axiom_lem.mutt") == axiom_source("lem", std::string(kLemType)));
  CHECK(test::read_source("prelude/axiom_nlem.mutt") == axiom_source("nlem", std::string(kNotLemType)));
  CHECK(prelude_text("axiom_lem.mutt") == axiom_source("lem", std::string(kLemType)));
}

TEST_CASE("an axiom in a non-isolated sort violates progress") {
  Parametrization base = base_type_theory();
  Development dev = test::extend(base, axiom_source("lem", std::string(kLemType), false));
  CHECK(test::first_error_tag(dev) == tag::kProgress);
  CHECK_THROWS_AS(axiom_extension(base, "bad name", "Unit"), std::invalid_argument);
  CHECK_THROWS_AS(axiom_extension(base, "t", "Nope_t"), PreludeError);
}

TEST_CASE("raise reacts to every type of the exceptional universe") {
  Parametrization exc = exc_extension(base_type_theory());
  const auto* raise = exc.sig.decl("raise");
  REQUIRE(raise);
  std::size_t small_types = 0;
  for (const auto& k : exc.sig.type_constants()) {
    auto u = type_constant_universe(*exc.sig.decl(k));
    if (u && u->first == "exc" && u->second == 0) {
      ++small_types;
      CHECK(react(exc.sig, "raise", k));
    }
  }
  CHECK(small_types == 2);
  CHECK(exc.sig.rules_of("raise").size() == small_types + 1);
}

TEST_CASE("the exceptional large elimination computes") {
  Development dev = prelude_development("exc.mutt");
  REQUIRE(dev.ok());
  REQUIRE(dev.defs.count("indU"));
  TermP t = test::term(dev, "indU Bool_E Deamon bool_exn");
  // The exception propagates to the boxed universe and unboxes to Deamon.
  CHECK(alpha_eq(normalize(dev.param.sig, t), mk_inert("Deamon")));
}

TEST_CASE("unknown prelude files") {
  CHECK(prelude_text("nope.mutt").empty());
  CHECK_FALSE(prelude_development("nope.mutt").ok());
}
