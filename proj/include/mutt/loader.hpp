#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mutt/check.hpp"
#include "mutt/diagnostics.hpp"
#include "mutt/elaborate.hpp"
#include "mutt/signature.hpp"

namespace mutt {

struct SourceText {
  std::string key;  // identity used to make inclusion idempotent
  std::string path;
  std::string text;
};

// Resolves `include "path"` written in `from` (a path or key). Returns nullopt
// when the file cannot be found.
using IncludeResolver =
    std::function<std::optional<SourceText>(const std::string& from, const std::string& path)>;

// Filesystem resolution relative to the including file.
IncludeResolver filesystem_resolver();

struct LoadOptions {
  CheckOptions check;
  // Seed the conversion options from sorts flagged irrelevant.
  bool irrelevance_from_sorts = true;
  IncludeResolver resolver = filesystem_resolver();
};

struct NormalForm {
  Span span;
  TermP term;
  TermP normal;
};

// The running state of a checked development. Declarations are processed top
// to bottom and processing stops at the first error.
struct Development {
  Parametrization param;
  Definitions defs;
  std::vector<std::string> def_order;
  std::set<std::string> included;
  std::vector<NormalForm> normal_forms;
  Diagnostics diagnostics;

  bool ok() const { return !has_error(diagnostics); }
};

// Loads and checks a file into `dev` (a fresh development by default).
void load_source(Development& dev, const SourceText& src, const LoadOptions& opts = {});
Development load_file(const std::string& path, const LoadOptions& opts = {});
Development load_string(const std::string& text, const std::string& name = "<input>",
                        const LoadOptions& opts = {});

// Effective check options for a development: the caller's options plus any
// sort flagged irrelevant.
CheckOptions effective_options(const Parametrization& p, const LoadOptions& opts);

}  // namespace mutt
