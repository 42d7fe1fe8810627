#include "mutt/prelude.hpp"

#include <regex>

#include "mutt/printer.hpp"

namespace mutt {

namespace detail {
std::string_view prelude_source(std::string_view name);
}

std::string_view prelude_text(std::string_view file) { return detail::prelude_source(file); }

IncludeResolver prelude_resolver() {
  auto fallback = filesystem_resolver();
  return [fallback](const std::string& from, const std::string& path) -> std::optional<SourceText> {
    auto text = prelude_text(path);
    if (!text.empty()) return SourceText{path, path, std::string(text)};
    return fallback(from, path);
  };
}

namespace {

LoadOptions with_prelude_resolver(LoadOptions opts) {
  opts.resolver = prelude_resolver();
  return opts;
}

Parametrization require(Development dev, const std::string& what) {
  if (!dev.ok()) {
    std::string msg = what + " failed to check";
    for (const auto& d : dev.diagnostics)
      if (d.severity == Severity::Error) {
        msg += ": " + format(d);
        break;
      }
    throw PreludeError(msg, dev.diagnostics);
  }
  return std::move(dev.param);
}

Parametrization extend_with(const Parametrization& base, const std::string& file) {
  auto text = prelude_text(file);
  return require(extend_development(base, SourceText{file, file, std::string(text)}), file);
}

}  // namespace

Development prelude_development(const std::string& file, const LoadOptions& opts) {
  Development dev;
  auto text = prelude_text(file);
  if (text.empty()) {
    dev.diagnostics.push_back(
        Diagnostic{Severity::Error, tag::kIo, "no prelude file " + file, Span{file, 0, 0}, {}});
    return dev;
  }
  load_source(dev, SourceText{file, file, std::string(text)}, with_prelude_resolver(opts));
  return dev;
}

Development extend_development(const Parametrization& base, const SourceText& src,
                               const LoadOptions& opts) {
  Development dev;
  dev.param = base;
  dev.included.insert("base.mutt");
  load_source(dev, src, with_prelude_resolver(opts));
  return dev;
}

Parametrization base_type_theory() { return require(prelude_development("base.mutt"), "base.mutt"); }
Parametrization prop_extension(const Parametrization& base) { return extend_with(base, "prop.mutt"); }
Parametrization sprop_extension(const Parametrization& base) { return extend_with(base, "sprop.mutt"); }
Parametrization exc_extension(const Parametrization& base) { return extend_with(base, "exc.mutt"); }

std::string axiom_source(const std::string& name, const std::string& axiom_type, bool isolated) {
  if (!is_identifier(name) || is_keyword(name))
    throw std::invalid_argument("axiom name must be an identifier: " + name);
  static const char* const kTemplate = R"(-- Axiom extension @N@: an isolated sort with its own copies of the base
-- types. Nothing computes out of it, so the axiom needs no rules.

include "base.mutt"

sort Ax_@N@@ISO@

positive Bot_@N@ : Univ Ax_@N@ 0 { }

eliminator bot_@N@_elim (P : Bot_@N@ -> Univ Ax_@N@ 0) on (x : Bot_@N@) : P x { }

positive Unit_@N@ : Univ Ax_@N@ 0 {
  constructor tt_@N@ : Unit_@N@
}

eliminator unit_@N@_elim (P : Unit_@N@ -> Univ Ax_@N@ 0) (ptt : P tt_@N@) on (x : Unit_@N@) : P x {
  rewrite unit_@N@_elim P ptt tt_@N@ ~> ptt
    in (P : Unit_@N@ -> Univ Ax_@N@ 0) (ptt : P tt_@N@)
}

positive Bool_@N@ : Univ Ax_@N@ 0 {
  constructor true_@N@ : Bool_@N@
  constructor false_@N@ : Bool_@N@
}

eliminator bool_@N@_elim (P : Bool_@N@ -> Univ Ax_@N@ 0) (pt : P true_@N@) (pf : P false_@N@)
    on (b : Bool_@N@) : P b {
  rewrite bool_@N@_elim P pt pf true_@N@ ~> pt
    in (P : Bool_@N@ -> Univ Ax_@N@ 0) (pt : P true_@N@) (pf : P false_@N@)
  rewrite bool_@N@_elim P pt pf false_@N@ ~> pf
    in (P : Bool_@N@ -> Univ Ax_@N@ 0) (pt : P true_@N@) (pf : P false_@N@)
}

positive Nat_@N@ : Univ Ax_@N@ 0 {
  constructor Z_@N@ : Nat_@N@
  constructor S_@N@ rec (n : Nat_@N@) : Nat_@N@
}

eliminator nat_@N@_elim (P : Nat_@N@ -> Univ Ax_@N@ 0) (p0 : P Z_@N@)
    (pS : Pi (n : Nat_@N@) -> P n -> P (S_@N@ n)) on (n : Nat_@N@) : P n {
  rewrite nat_@N@_elim P p0 pS Z_@N@ ~> p0
    in (P : Nat_@N@ -> Univ Ax_@N@ 0) (p0 : P Z_@N@) (pS : Pi (n : Nat_@N@) -> P n -> P (S_@N@ n))
  rewrite nat_@N@_elim P p0 pS S_@N@ ?n{P p0 pS} ~> pS n n^rec
    in (P : Nat_@N@ -> Univ Ax_@N@ 0) (p0 : P Z_@N@) (pS : Pi (n : Nat_@N@) -> P n -> P (S_@N@ n))
       (n : Nat_@N@)
}

positive Sum_@N@ (A B : Univ Ax_@N@ 0) : Univ Ax_@N@ 0 {
  constructor inl_@N@ (A B : Univ Ax_@N@ 0) (a : A) : Sum_@N@ A B
  constructor inr_@N@ (A B : Univ Ax_@N@ 0) (b : B) : Sum_@N@ A B
}

eliminator sum_@N@_elim (A B : Univ Ax_@N@ 0) (P : Sum_@N@ A B -> Univ Ax_@N@ 0)
    (l : Pi (a : A) -> P (inl_@N@ A B a)) (r : Pi (b : B) -> P (inr_@N@ A B b))
    on (s : Sum_@N@ A B) : P s {
  rewrite sum_@N@_elim A B P l r inl_@N@ ?A2 ?B2 ?a ~> l a
    in (A B : Univ Ax_@N@ 0) (P : Sum_@N@ A B -> Univ Ax_@N@ 0)
       (l : Pi (a : A) -> P (inl_@N@ A B a)) (r : Pi (b : B) -> P (inr_@N@ A B b))
       (A2 B2 : Univ Ax_@N@ 0) (a : A2)
    with (A B : Univ Ax_@N@ 0) (P : Sum_@N@ A B -> Univ Ax_@N@ 0)
       (l : Pi (a : A) -> P (inl_@N@ A B a)) (r : Pi (b : B) -> P (inr_@N@ A B b)) (a : A)
    via A B P l r A B a
  rewrite sum_@N@_elim A B P l r inr_@N@ ?A2 ?B2 ?b ~> r b
    in (A B : Univ Ax_@N@ 0) (P : Sum_@N@ A B -> Univ Ax_@N@ 0)
       (l : Pi (a : A) -> P (inl_@N@ A B a)) (r : Pi (b : B) -> P (inr_@N@ A B b))
       (A2 B2 : Univ Ax_@N@ 0) (b : B2)
    with (A B : Univ Ax_@N@ 0) (P : Sum_@N@ A B -> Univ Ax_@N@ 0)
       (l : Pi (a : A) -> P (inl_@N@ A B a)) (r : Pi (b : B) -> P (inr_@N@ A B b)) (b : B)
    via A B P l r A B b
}

-- Values of Type may enter the sort, never leave it.
positive BoxT_@N@ (A : Univ Type 0) : Univ Ax_@N@ 0 {
  constructor boxT_@N@ (A : Univ Type 0) (a : A) : BoxT_@N@ A
}

eliminator unboxT_@N@ (A : Univ Type 0) (P : BoxT_@N@ A -> Univ Ax_@N@ 0)
    (u : Pi (z : A) -> P (boxT_@N@ A z)) on (x : BoxT_@N@ A) : P x {
  rewrite unboxT_@N@ A P u boxT_@N@ ?C ?z ~> u z
    in (A : Univ Type 0) (P : BoxT_@N@ A -> Univ Ax_@N@ 0) (u : Pi (z : A) -> P (boxT_@N@ A z))
       (C : Univ Type 0) (z : C)
    with (A : Univ Type 0) (P : BoxT_@N@ A -> Univ Ax_@N@ 0) (u : Pi (z : A) -> P (boxT_@N@ A z)) (z : A)
    via A P u A z
}

eliminator axiom_@N@ on (u : Unit_@N@) : @T@ { }
)";
  std::string out = kTemplate;
  out = std::regex_replace(out, std::regex("@ISO@"), isolated ? " isolated" : "");
  out = std::regex_replace(out, std::regex("@N@"), name);
  // The type is inserted last so that it is not rewritten.
  const auto pos = out.find("@T@");
  out.replace(pos, 3, axiom_type);
  return out;
}

Parametrization axiom_extension(const Parametrization& base, const std::string& name,
                                const std::string& axiom_type) {
  const std::string file = "axiom_" + name + ".mutt";
  return require(extend_development(base, SourceText{file, file, axiom_source(name, axiom_type)}), file);
}

}  // namespace mutt
