#include "mutt/loader.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mutt/ast.hpp"
#include "mutt/reduction.hpp"
#include "mutt/typing.hpp"

namespace mutt {

namespace fs = std::filesystem;

namespace {

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Loader {
 public:
  Loader(Development& dev, const LoadOptions& opts) : dev_(dev), opts_(opts) {}

  // Returns false once an error has been recorded.
  bool source(const SourceText& src) {
    if (!dev_.included.insert(src.key).second) return true;
    ast::SourceFile file;
    try {
      file = ast::parse(src.text, src.path);
    } catch (const SpannedError& e) {
      report(e.tag(), e.what(), e.span());
      return false;
    }
    for (const auto& d : file.decls)
      if (!decl(src, d)) return false;
    return true;
  }

 private:
  void report(const std::string& t, const std::string& msg, const Span& span,
              std::optional<std::size_t> entry = std::nullopt) {
    dev_.diagnostics.push_back(Diagnostic{Severity::Error, t, msg, span, entry});
  }

  CheckOptions options() const { return effective_options(dev_.param, opts_); }

  bool decl(const SourceText& src, const ast::Decl& d) {
    try {
      return std::visit([&](const auto& x) { return handle(src, d.span, x); }, d.node);
    } catch (const SpannedError& e) {
      report(e.tag(), e.what(), e.span());
    } catch (const KernelError& e) {
      report(e.tag(), e.what(), d.span);
    }
    return false;
  }

  bool handle(const SourceText& src, const Span& span, const ast::Include& inc) {
    auto found = opts_.resolver ? opts_.resolver(src.key, inc.path) : std::nullopt;
    if (!found) {
      report(tag::kIo, "cannot include \"" + inc.path + "\"", span);
      return false;
    }
    return source(*found);
  }

  bool handle(const SourceText&, const Span& span, const ast::SortDecl& s) {
    if (dev_.param.has_sort(s.name.text)) {
      report(tag::kSortTable, "sort " + s.name.text + " is declared twice", s.name.span);
      return false;
    }
    Parametrization trial = dev_.param;
    trial.sorts.push_back(SortInfo{s.name.text, false, s.isolated, s.restricted, s.irrelevant});
    auto ds = check_sorts(trial);
    if (has_error(ds)) {
      for (auto& d : ds) report(d.tag, d.message, span);
      return false;
    }
    dev_.param.sorts = std::move(trial.sorts);
    return true;
  }

  template <class E>
  bool add_entry(const Span& span, E entry) {
    SignatureEntry e{std::move(entry)};
    const CheckOptions o = options();
    auto ds = check_entry(dev_.param, e, o);
    const std::size_t idx = dev_.param.sig.size();
    for (auto& d : ds) report(d.tag, entry_kind_name(e) + " " + entry_name(e) + ": " + d.message, span, idx);
    if (has_error(ds)) return false;
    dev_.param.sig.add(std::move(e));
    return true;
  }

  Elaborator elaborator() { return Elaborator(dev_.param, dev_.defs, options()); }

  bool handle(const SourceText&, const Span& span, const ast::PositiveDecl& d) {
    return add_entry(span, elaborator().positive(d));
  }
  bool handle(const SourceText&, const Span& span, const ast::NegativeDecl& d) {
    return add_entry(span, elaborator().negative(d));
  }
  bool handle(const SourceText&, const Span& span, const ast::EliminatorDecl& d) {
    return add_entry(span, elaborator().eliminator(d));
  }
  bool handle(const SourceText&, const Span& span, const ast::BuilderDecl& d) {
    return add_entry(span, elaborator().builder(d));
  }

  // The sort a type's inhabitants live in.
  SortName sort_of_type(const TermP& a, Typer& ty) { return ty.infer_type({}, a).first; }

  bool handle(const SourceText&, const Span&, const ast::Def& d) {
    if (dev_.defs.count(d.name.text) || dev_.param.sig.lookup(d.name.text)) {
      report(tag::kOrder, "`" + d.name.text + "` is already defined", d.name.span);
      return false;
    }
    auto el = elaborator();
    TermP body = el.closed_term(d.body);
    Typer ty(dev_.param, options().conv, options().fuel);
    try {
      if (d.type) {
        TermP a = el.closed_term(d.type);
        ty.check(Context{}, body, a, sort_of_type(a, ty));
      } else {
        ty.infer(Context{}, body);
      }
    } catch (const SpannedError&) {
      throw;
    } catch (const KernelError& e) {
      throw SpannedError(e.tag(), "definition `" + d.name.text + "`: " + e.what(), d.body->span);
    }
    dev_.defs[d.name.text] = body;
    dev_.def_order.push_back(d.name.text);
    return true;
  }

  bool handle(const SourceText&, const Span& span, const ast::Check& c) {
    auto el = elaborator();
    TermP t = el.closed_term(c.term);
    Typer ty(dev_.param, options().conv, options().fuel);
    try {
      if (c.type) {
        TermP a = el.closed_term(c.type);
        ty.check(Context{}, t, a, sort_of_type(a, ty));
      } else {
        ty.infer(Context{}, t);
      }
    } catch (const SpannedError&) {
      throw;
    } catch (const KernelError& e) {
      throw SpannedError(e.tag(), e.what(), span);
    }
    return true;
  }

  bool handle(const SourceText&, const Span& span, const ast::Normalize& n) {
    auto el = elaborator();
    TermP t = el.closed_term(n.term);
    try {
      Typer(dev_.param, options().conv, options().fuel).infer(Context{}, t);
      Fuel fuel(options().fuel);
      dev_.normal_forms.push_back(NormalForm{span, t, normalize(dev_.param.sig, t, fuel)});
    } catch (const KernelError& e) {
      throw SpannedError(e.tag(), e.what(), span);
    }
    return true;
  }

  Development& dev_;
  const LoadOptions& opts_;
};

}  // namespace

IncludeResolver filesystem_resolver() {
  return [](const std::string& from, const std::string& path) -> std::optional<SourceText> {
    fs::path p(path);
    if (p.is_relative()) p = fs::path(from).parent_path() / p;
    std::error_code ec;
    fs::path canon = fs::weakly_canonical(p, ec);
    if (ec) canon = p;
    auto text = read_file(canon);
    if (!text) return std::nullopt;
    return SourceText{canon.string(), canon.string(), std::move(*text)};
  };
}

CheckOptions effective_options(const Parametrization& p, const LoadOptions& opts) {
  CheckOptions o = opts.check;
  if (opts.irrelevance_from_sorts)
    for (const auto& s : p.sorts)
      if (s.irrelevant) o.conv.irrelevant_sorts.insert(s.name);
  return o;
}

void load_source(Development& dev, const SourceText& src, const LoadOptions& opts) {
  Loader loader(dev, opts);
  if (!loader.source(src)) return;
  auto eta = check_eta_compat(dev.param, effective_options(dev.param, opts).conv);
  for (auto& d : eta) {
    d.span.file = src.path;
    dev.diagnostics.push_back(d);
  }
}

Development load_file(const std::string& path, const LoadOptions& opts) {
  Development dev;
  std::error_code ec;
  fs::path canon = fs::weakly_canonical(fs::path(path), ec);
  if (ec) canon = path;
  auto text = read_file(canon);
  if (!text) {
    dev.diagnostics.push_back(Diagnostic{Severity::Error, tag::kIo, "cannot read " + path, Span{path, 0, 0}, {}});
    return dev;
  }
  load_source(dev, SourceText{canon.string(), path, std::move(*text)}, opts);
  return dev;
}

Development load_string(const std::string& text, const std::string& name, const LoadOptions& opts) {
  Development dev;
  load_source(dev, SourceText{name, name, text}, opts);
  return dev;
}

}  // namespace mutt
