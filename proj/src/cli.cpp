#include "mutt/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "mutt/loader.hpp"
#include "mutt/merge.hpp"
#include "mutt/printer.hpp"
#include "mutt/reduction.hpp"

namespace mutt {

namespace {

struct Globals {
  std::uint64_t fuel = kDefaultFuel;
  bool eta_records = false;
  std::vector<std::string> irrelevant;
  bool trace = false;
  bool json = false;
};

LoadOptions load_options(const Globals& g, std::ostream& err) {
  LoadOptions o;
  o.check.fuel = g.fuel;
  o.check.conv.eta_negative_records = g.eta_records;
  o.check.conv.irrelevant_sorts.insert(g.irrelevant.begin(), g.irrelevant.end());
  if (g.trace) o.check.conv.trace = &err;
  return o;
}

void emit(const Diagnostics& ds, const Globals& g, std::ostream& out, std::ostream& err) {
  for (const auto& d : ds) {
    if (g.json) {
      nlohmann::json j{{"severity", severity_name(d.severity)},
                       {"tag", d.tag},
                       {"message", d.message},
                       {"file", d.span.file},
                       {"line", d.span.line},
                       {"col", d.span.col}};
      out << j.dump() << '\n';
    } else {
      err << format(d) << '\n';
    }
  }
}

int cmd_check(const std::vector<std::string>& files, const Globals& g, std::ostream& out,
              std::ostream& err) {
  bool ok = true;
  for (const auto& f : files) {
    Development dev = load_file(f, load_options(g, err));
    emit(dev.diagnostics, g, out, err);
    if (!g.json)
      for (const auto& nf : dev.normal_forms) out << print_term(nf.normal) << '\n';
    ok = ok && dev.ok();
  }
  return ok ? 0 : 1;
}

int cmd_normalize(const std::string& file, const std::string& name, bool deep, const Globals& g,
                  std::ostream& out, std::ostream& err) {
  Development dev = load_file(file, load_options(g, err));
  emit(dev.diagnostics, g, out, err);
  if (!dev.ok()) return 1;
  auto it = dev.defs.find(name);
  if (it == dev.defs.end()) {
    emit({Diagnostic{Severity::Error, tag::kScope, "no definition named `" + name + "`", Span{file, 0, 0}, {}}},
         g, out, err);
    return 1;
  }
  try {
    Fuel fuel(g.fuel);
    TermP nf = deep ? normalize(dev.param.sig, it->second, fuel) : whnf(dev.param.sig, it->second, fuel);
    out << print_term(nf) << '\n';
  } catch (const KernelError& e) {
    emit({Diagnostic{Severity::Error, e.tag(), e.what(), Span{file, 0, 0}, {}}}, g, out, err);
    return 1;
  }
  return 0;
}

int cmd_merge(const std::string& base, const std::string& ext1, const std::string& ext2,
              const std::string& output, const Globals& g, std::ostream& out, std::ostream& err) {
  const LoadOptions opts = load_options(g, err);
  Development d0 = load_file(base, opts);
  Development d1 = load_file(ext1, opts);
  Development d2 = load_file(ext2, opts);
  bool ok = true;
  for (auto* d : {&d0, &d1, &d2}) {
    emit(d->diagnostics, g, out, err);
    ok = ok && d->ok();
  }
  if (!ok) return 1;
  MergeResult r = merge(d0.param, d1.param, d2.param, opts.check);
  emit(r.diagnostics, g, out, err);
  if (!r.merged || has_error(r.diagnostics)) return 1;
  std::ofstream f(output, std::ios::binary);
  f << print_parametrization(*r.merged);
  if (!f) {
    emit({Diagnostic{Severity::Error, tag::kIo, "cannot write " + output, Span{output, 0, 0}, {}}}, g, out, err);
    return 1;
  }
  return 0;
}

int cmd_explain(const std::string& code, std::ostream& out, std::ostream& err) {
  auto text = explain(code);
  if (!text) {
    err << "unknown diagnostic tag `" << code << "`; known tags:\n";
    for (const auto& t : known_tags()) err << "  " << t << '\n';
    return 1;
  }
  out << code << ": " << *text << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reference checker for multiverse type theory signatures", "mutt"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--fuel", g.fuel, "Reduction step budget")->check(CLI::PositiveNumber);
  app.add_flag("--eta-records", g.eta_records, "Enable eta for negative records");
  app.add_option("--irrelevant", g.irrelevant, "Treat SORT as definitionally proof-irrelevant")
      ->type_name("SORT")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_flag("--trace-conversion", g.trace, "Log conversion checks to stderr");
  app.add_flag("--json", g.json, "Print diagnostics as JSON, one object per line");

  std::vector<std::string> files;
  auto* check = app.add_subcommand("check", "Load and check files");
  check->add_option("FILE", files, "Files to check")->required()->check(CLI::ExistingFile);

  std::string file, term;
  bool deep = false;
  auto* norm = app.add_subcommand("normalize", "Normalize a definition");
  norm->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  norm->add_option("--term", term, "Definition to normalize")->required();
  norm->add_flag("--deep", deep, "Normalize under constructors and binders");

  std::string base, ext1, ext2, output;
  auto* mrg = app.add_subcommand("merge", "Merge two extensions of a common base");
  mrg->add_option("BASE", base)->required()->check(CLI::ExistingFile);
  mrg->add_option("EXT1", ext1)->required()->check(CLI::ExistingFile);
  mrg->add_option("EXT2", ext2)->required()->check(CLI::ExistingFile);
  mrg->add_option("-o,--output", output, "Output file")->required();

  std::string code;
  auto* expl = app.add_subcommand("explain", "Describe the rule behind a diagnostic tag");
  expl->add_option("CODE", code)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (*check) return cmd_check(files, g, out, err);
  if (*norm) return cmd_normalize(file, term, deep, g, out, err);
  if (*mrg) return cmd_merge(base, ext1, ext2, output, g, out, err);
  return cmd_explain(code, out, err);
}

}  // namespace mutt
