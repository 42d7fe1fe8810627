#include <doctest.h>

#include "mutt/ast.hpp"
#include "mutt/lexer.hpp"
#include "mutt/printer.hpp"
#include "mutt/syntax.hpp"
#include "support.hpp"

using namespace mutt;

namespace {
const Binder kNat{mk_inert("Nat"), kTypeSort, 0, "n"};
}

TEST_CASE("free variable bound is cached") {
  CHECK(mk_var(3)->fv == 4);
  CHECK(mk_lam(kNat, mk_var(0))->fv == 0);
  CHECK(mk_lam(kNat, mk_var(2))->fv == 2);
  CHECK(mk_inert("S", {mk_var(1)})->fv == 2);
}

TEST_CASE("shift moves only indices at or above the cutoff") {
  TermP t = mk_app(mk_var(0), mk_lam(kNat, mk_app(mk_var(0), mk_var(1))));
  TermP s = shift(t, 2);
  CHECK(alpha_eq(s, mk_app(mk_var(2), mk_lam(kNat, mk_app(mk_var(0), mk_var(3))))));
  CHECK(alpha_eq(shift(s, -2), t));
  CHECK(alpha_eq(shift(mk_app(mk_var(0), mk_var(1)), 5, 1), mk_app(mk_var(0), mk_var(6))));
}

TEST_CASE("subst_apply replaces the last context entry by Var 0") {
  // t lives in Γ·(x, y): Var 0 is y, Var 1 is x, Var 2 is Γ's last.
  TermP t = mk_inert("pair", {mk_var(0), mk_var(1), mk_var(2)});
  TermP r = subst_apply(t, {mk_inert("a"), mk_inert("b")});
  CHECK(alpha_eq(r, mk_inert("pair", {mk_inert("b"), mk_inert("a"), mk_var(0)})));
}

TEST_CASE("substitution under a binder shifts the substituted term") {
  TermP body = mk_lam(kNat, mk_app(mk_var(1), mk_var(0)));
  TermP r = subst1(body, mk_var(4));
  CHECK(alpha_eq(r, mk_lam(kNat, mk_app(mk_var(5), mk_var(0)))));
}

TEST_CASE("composition agrees with sequential application") {
  Subst sigma{mk_var(0), mk_inert("S", {mk_var(1)})};
  Subst rho{mk_inert("0"), mk_var(0)};
  TermP t = mk_inert("pair", {mk_var(0), mk_var(1)});
  CHECK(alpha_eq(subst_apply(subst_apply(t, sigma), rho), subst_apply(t, subst_compose(sigma, rho))));
  CHECK(subst_eq(subst_compose(id_subst(2), rho), rho));
}

TEST_CASE("alpha equality ignores binder names but not annotations") {
  Binder other = kNat;
  other.name = "m";
  CHECK(alpha_eq(mk_lam(kNat, mk_var(0)), mk_lam(other, mk_var(0))));
  Binder lvl = kNat;
  lvl.level = 1;
  CHECK_FALSE(alpha_eq(mk_lam(kNat, mk_var(0)), mk_lam(lvl, mk_var(0))));
  CHECK(debug_string(mk_lam(kNat, mk_var(0))) != debug_string(mk_lam(other, mk_var(0))));
}

TEST_CASE("pi telescopes nest to the right") {
  Context tel{kNat, Binder{mk_inert("Bool"), kTypeSort, 0, "b"}};
  TermP t = pi_telescope(tel, mk_var(1));
  const auto* outer = t->as<Pi>();
  REQUIRE(outer);
  const auto* inner = outer->cod->as<Pi>();
  REQUIRE(inner);
  CHECK(alpha_eq(inner->cod, mk_var(1)));
  CHECK(occurs_free(mk_lam(kNat, mk_var(1)), 0));
  CHECK_FALSE(occurs_free(mk_lam(kNat, mk_var(0)), 0));
}

TEST_CASE("sort declarations carry their flags") {
  auto f = ast::parse("sort Exc isolated\nsort P restricted irrelevant\n", "<t>");
  REQUIRE(f.decls.size() == 2);
  const auto& s = std::get<ast::SortDecl>(f.decls[0].node);
  CHECK(s.name.text == "Exc");
  CHECK(s.isolated);
  CHECK_FALSE(s.restricted);
  const auto& p = std::get<ast::SortDecl>(f.decls[1].node);
  CHECK(p.restricted);
  CHECK(p.irrelevant);
}

TEST_CASE("syntax errors carry a position") {
  try {
    ast::parse("def x : Nat :=\n  S (S 0\n", "f.mutt");
    FAIL("no error");
  } catch (const SpannedError& e) {
    CHECK(e.tag() == std::string(tag::kSyntax));
    CHECK(e.span().file == "f.mutt");
    CHECK(e.span().line == 3);
  }
  try {
    ast::parse("check (fun (x : A) => x))", "g.mutt");
    FAIL("no error");
  } catch (const SpannedError& e) {
    CHECK(e.span().line == 1);
    CHECK(e.span().col == 25);
  }
  CHECK_THROWS_AS(ast::parse("def x := $", "h.mutt"), SpannedError);
}

TEST_CASE("comments and identifiers") {
  auto toks = lex("-- a comment\nS' x^rec 0_n \"p.mutt\" ~> => -> :=", "<t>");
  REQUIRE(toks.size() == 9);
  CHECK(toks[0].text == "S'");
  CHECK(toks[1].text == "x^rec");
  CHECK(toks[2].text == "0_n");
  CHECK(toks[3].kind == Tok::String);
  CHECK(toks[3].text == "p.mutt");
  CHECK(toks[0].span.line == 2);
}

TEST_CASE("printer output re-elaborates to the same term") {
  auto dev = test::load_text(test::kArith);
  REQUIRE(dev.ok());
  for (const char* src : {"fun (f : Nat -> Nat) (x : Nat) => f (f x)", "Pi (A : Univ Type 0) -> A -> A",
                          "fun (A : Univ Type 0) (x : A) => refl A x",
                          "fun (n : Nat) => nat_elim (fun (_ : Nat) => Nat) n (fun (k r : Nat) => S r) n"}) {
    TermP t = test::term(dev, src);
    const std::string printed = print_term(t);
    CAPTURE(printed);
    CHECK(alpha_eq(test::term(dev, printed), t));
  }
}

TEST_CASE("printer avoids capturing constants and shadowed names") {
  TermP t = mk_lam(Binder{mk_inert("Nat"), kTypeSort, 0, "S"},
                   mk_lam(Binder{mk_inert("Nat"), kTypeSort, 0, "S"}, mk_inert("S", {mk_var(1)})));
  const std::string printed = print_term(t);
  CAPTURE(printed);
  auto dev = test::load_text("include \"base.mutt\"\n");
  CHECK(alpha_eq(test::term(dev, printed), t));
}

TEST_CASE("every prelude file round-trips through the printer") {
  for (const char* file : {"base.mutt", "exc.mutt", "prop.mutt", "sprop.mutt", "axiom_lem.mutt", "axiom_nlem.mutt"}) {
    CAPTURE(file);
    Development dev = prelude_development(file);
    REQUIRE(dev.ok());
    const std::string printed = print_parametrization(dev.param);
    Development again = load_string(printed, "<printed>");
    REQUIRE_MESSAGE(again.ok(), (again.diagnostics.empty() ? "" : format(again.diagnostics.front())));
    REQUIRE(again.param.sorts.size() == dev.param.sorts.size());
    for (std::size_t i = 0; i < dev.param.sorts.size(); ++i) {
      // Printing lists non-Type sorts first.
      const auto* s = again.param.sort(dev.param.sorts[i].name);
      REQUIRE(s);
      CHECK(sort_info_eq(*s, dev.param.sorts[i]));
    }
    REQUIRE(again.param.sig.size() == dev.param.sig.size());
    for (std::size_t i = 0; i < dev.param.sig.size(); ++i)
      CHECK(entry_eq(*again.param.sig.entries()[i], *dev.param.sig.entries()[i]));
    CHECK(print_parametrization(again.param) == printed);
  }
}

TEST_CASE("base prints as the golden file") {
  Development dev = prelude_development("base.mutt");
  REQUIRE(dev.ok());
  CHECK(print_parametrization(dev.param) == test::read_source("tests/golden/base.printed.mutt"));
}
