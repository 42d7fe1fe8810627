#include "mutt/merge.hpp"

#include <set>

namespace mutt {

namespace {

Diagnostic diag(const char* t, std::string msg) {
  return Diagnostic{Severity::Error, t, std::move(msg), {}, std::nullopt};
}

// Whether some entry of sig is exactly e.
bool contains_entry(const Signature& sig, const SignatureEntry& e) {
  const auto* info = sig.lookup(entry_name(e));
  if (!info) return false;
  return entry_eq(*sig.entries()[info->entry], e);
}

}  // namespace

ExtensionReport is_proper_extension(const Parametrization& p, const Parametrization& p2) {
  ExtensionReport r;
  auto fail = [&](std::string msg) {
    r.is_proper = false;
    r.violations.push_back(diag(tag::kImproper, std::move(msg)));
  };
  for (const auto& s : p.sorts) {
    const auto* t = p2.sort(s.name);
    if (!t)
      fail("sort " + s.name + " is missing");
    else if (!sort_info_eq(s, *t))
      fail("sort " + s.name + " changes its flags");
  }
  for (const auto& e : p.sig.entries())
    if (!contains_entry(p2.sig, *e)) fail(entry_kind_name(*e) + " " + entry_name(*e) + " is missing or altered");
  for (const auto& e : p2.sig.entries()) {
    const auto* el = std::get_if<Eliminator>(e.get());
    if (!el || el->decl.dom.size() != 1) continue;
    const auto* u = el->decl.scrutinee().type->as<Univ>();
    if (!u || !p.has_sort(u->sort)) continue;
    if (!contains_entry(p.sig, *e))
      fail("new eliminator " + el->decl.name + " on Univ " + u->sort + ", a sort of the original");
  }
  return r;
}

std::optional<std::size_t> shared_prefix(const Signature& prefix, const Signature& whole) {
  const auto& a = prefix.entries();
  const auto& b = whole.entries();
  if (a.size() > b.size()) return std::nullopt;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!entry_eq(*a[i], *b[i])) return std::nullopt;
  return a.size();
}

MergeResult merge(const Parametrization& p, const Parametrization& p1, const Parametrization& p2,
                  const CheckOptions& opts) {
  MergeResult out;
  auto n1 = shared_prefix(p.sig, p1.sig);
  auto n2 = shared_prefix(p.sig, p2.sig);
  if (!n1) out.diagnostics.push_back(diag(tag::kPrefix, "the base signature is not a prefix of the first extension"));
  if (!n2) out.diagnostics.push_back(diag(tag::kPrefix, "the base signature is not a prefix of the second extension"));
  for (const auto* q : {&p1, &p2}) {
    auto rep = is_proper_extension(p, *q);
    for (auto& v : rep.violations) {
      v.message = (q == &p1 ? "first extension: " : "second extension: ") + v.message;
      out.diagnostics.push_back(v);
    }
  }

  Parametrization m{p2.sorts, {}};
  for (const auto& s : p1.sorts) {
    const auto* t = p2.sort(s.name);
    if (!t) {
      m.sorts.push_back(s);
      continue;
    }
    if (!p.has_sort(s.name))
      out.diagnostics.push_back(diag(tag::kSharedSort, "sort " + s.name + " is introduced by both extensions"));
    else if (!sort_info_eq(s, *t))
      out.diagnostics.push_back(diag(tag::kSharedSort, "the extensions disagree on sort " + s.name));
  }
  if (!out.diagnostics.empty()) return out;

  for (const auto& e : p2.sig.entries()) m.sig.add(*e);
  const auto& e1 = p1.sig.entries();
  for (std::size_t i = *n1; i < e1.size(); ++i) {
    if (m.sig.lookup(entry_name(*e1[i]))) {
      out.diagnostics.push_back(diag(tag::kPrefix, "both extensions declare " + entry_name(*e1[i]) +
                                                       " outside the shared base"));
      return out;
    }
    m.sig.add(*e1[i]);
  }

  auto ds = check_signature(m, opts);
  for (auto& d : ds) {
    if (d.severity != Severity::Error) continue;
    d.message = "merged signature rejected: " + d.message + " [" + d.tag + "]";
    d.tag = tag::kPostMerge;
    out.diagnostics.push_back(d);
  }
  for (const auto* q : {&p1, &p2}) {
    auto rep = is_proper_extension(*q, m);
    for (auto& v : rep.violations) {
      v.tag = tag::kPostMerge;
      v.message = "merge does not extend an input: " + v.message;
      out.diagnostics.push_back(v);
    }
  }
  if (!has_error(out.diagnostics)) out.merged = std::move(m);
  return out;
}

}  // namespace mutt
