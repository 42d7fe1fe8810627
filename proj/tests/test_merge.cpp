#include <doctest.h>

#include "mutt/merge.hpp"
#include "mutt/prelude.hpp"
#include "support.hpp"

using namespace mutt;

namespace {

const Parametrization& base() {
  static const Parametrization p = base_type_theory();
  return p;
}

}  // namespace

TEST_CASE("prelude extensions are proper") {
  for (const auto& p : {exc_extension(base()), prop_extension(base()), sprop_extension(base())}) {
    auto r = is_proper_extension(base(), p);
    CHECK(r.is_proper);
    CHECK(r.violations.empty());
  }
  CHECK(is_proper_extension(base(), base()).is_proper);
}

TEST_CASE("dropping an entry or changing a sort is improper") {
  Parametrization exc = exc_extension(base());
  auto r = is_proper_extension(exc, base());
  CHECK_FALSE(r.is_proper);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations[0].tag == tag::kImproper);

  Parametrization flipped = exc;
  for (auto& s : flipped.sorts)
    if (s.name == "exc") s.isolated = true;
  CHECK_FALSE(is_proper_extension(exc, flipped).is_proper);
}

TEST_CASE("a new universe eliminator on an old sort is improper") {
  Development ext = test::extend(base(),
                                 "sort Ax isolated\n"
                                 "positive M : Univ Ax 0 { constructor m : M }\n"
                                 "eliminator peek on (X : Univ Type 0) : M { }\n");
  REQUIRE(ext.ok());
  CHECK_FALSE(is_proper_extension(base(), ext.param).is_proper);
}

TEST_CASE("merge puts the second extension first") {
  Parametrization exc = exc_extension(base());
  Parametrization lem = axiom_extension(base(), "lem", std::string(kLemType));
  auto r = merge(base(), exc, lem);
  REQUIRE(r.merged);
  CHECK(r.diagnostics.empty());
  const auto& m = *r.merged;
  CHECK(m.sig.size() == exc.sig.size() + lem.sig.size() - base().sig.size());
  CHECK(m.has_sort("exc"));
  CHECK(m.has_sort("Ax_lem"));
  CHECK(shared_prefix(lem.sig, m.sig) == std::optional<std::size_t>(lem.sig.size()));
  CHECK(is_proper_extension(exc, m).is_proper);
  CHECK(is_proper_extension(lem, m).is_proper);
}

TEST_CASE("merge rejects shared sorts, clashing names and non-prefix bases") {
  Parametrization exc = exc_extension(base());
  auto same = merge(base(), exc, exc);
  CHECK_FALSE(same.merged);
  REQUIRE_FALSE(same.diagnostics.empty());
  CHECK(same.diagnostics[0].tag == tag::kSharedSort);

  Development a = test::extend(base(), "positive Extra : Univ Type 0 { }\n");
  Development b = test::extend(base(), "positive Extra : Univ Type 0 { constructor e : Extra }\n");
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  auto clash = merge(base(), a.param, b.param);
  CHECK_FALSE(clash.merged);
  REQUIRE_FALSE(clash.diagnostics.empty());
  CHECK(clash.diagnostics[0].tag == tag::kPrefix);

  auto not_prefix = merge(exc, base(), exc);
  CHECK_FALSE(not_prefix.merged);
  REQUIRE_FALSE(not_prefix.diagnostics.empty());
  CHECK(not_prefix.diagnostics[0].tag == tag::kPrefix);
}

TEST_CASE("merging two contradicting axioms keeps both isolated") {
  Parametrization lem = axiom_extension(base(), "lem", std::string(kLemType));
  Parametrization nlem = axiom_extension(base(), "nlem", std::string(kNotLemType));
  auto r = merge(base(), lem, nlem);
  REQUIRE(r.merged);
  CHECK(r.merged->isolated("Ax_lem"));
  CHECK(r.merged->isolated("Ax_nlem"));
  CHECK(r.merged->sig.decl("axiom_lem"));
  CHECK(r.merged->sig.decl("axiom_nlem"));
}
