#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mutt {

enum class Severity { Error, Warning, Note };

struct Span {
  std::string file;
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string tag;
  std::string message;
  Span span;
  // Index of the signature entry the diagnostic is about, when known.
  std::optional<std::size_t> entry;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_error(const Diagnostics& ds);
std::string severity_name(Severity s);
std::string format(const Diagnostic& d);

// Raised by the kernel; the checkers turn it into a Diagnostic.
class KernelError : public std::runtime_error {
 public:
  KernelError(std::string tag, const std::string& msg)
      : std::runtime_error(msg), tag_(std::move(tag)) {}
  const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

namespace tag {
inline constexpr const char* kSyntax = "syntax";
inline constexpr const char* kScope = "scope";
inline constexpr const char* kUnbound = "typing.unbound";
inline constexpr const char* kNotAFunction = "typing.not-a-function";
inline constexpr const char* kSortMismatch = "typing.sort-mismatch";
inline constexpr const char* kLevelMismatch = "typing.level-mismatch";
inline constexpr const char* kArity = "typing.arity";
inline constexpr const char* kTypeMismatch = "typing.type-mismatch";
inline constexpr const char* kConversion = "typing.conversion";
inline constexpr const char* kNotAType = "typing.not-a-type";
inline constexpr const char* kPattern = "typing.pattern";
inline constexpr const char* kSortTable = "signature.sort";
inline constexpr const char* kOrder = "signature.order";
inline constexpr const char* kPos1 = "positive.universe-eliminated";
inline constexpr const char* kPos2 = "positive.parameters";
inline constexpr const char* kPos3 = "positive.constructor";
inline constexpr const char* kNeg1 = "negative.universe-eliminated";
inline constexpr const char* kNeg2 = "negative.parameters";
inline constexpr const char* kNeg3 = "negative.observation";
inline constexpr const char* kIsolation = "isolation";
inline constexpr const char* kElimDomain = "eliminator.domain";
inline constexpr const char* kElimTyping = "eliminator.typing";
inline constexpr const char* kBuilderTyping = "builder.typing";
inline constexpr const char* kProgress = "progress";
inline constexpr const char* kDeterminism = "determinism";
inline constexpr const char* kRuleHead = "rewrite.head";
inline constexpr const char* kRewRenaming = "rewrite.renaming";
inline constexpr const char* kRewParams = "rewrite.parameters";
inline constexpr const char* kRewPattern = "rewrite.pattern";
inline constexpr const char* kRewRhs = "rewrite.rhs";
inline constexpr const char* kLinearA = "linearizable.occurrence";
inline constexpr const char* kLinearB = "linearizable.universe";
inline constexpr const char* kLinearB2 = "linearizable.inverse";
inline constexpr const char* kSingleton = "singleton-elimination";
inline constexpr const char* kEtaConflict = "conversion.eta-record-conflict";
inline constexpr const char* kFuel = "reduction.fuel";
inline constexpr const char* kSharedSort = "merge.shared-sort";
inline constexpr const char* kPrefix = "merge.prefix";
inline constexpr const char* kPostMerge = "merge.post-check";
inline constexpr const char* kImproper = "merge.improper-extension";
inline constexpr const char* kDirective = "directive";
inline constexpr const char* kIo = "io";
}  // namespace tag

// Human-readable statement of the rule behind a tag; nullopt if unknown.
std::optional<std::string> explain(std::string_view tag);
std::vector<std::string> known_tags();

}  // namespace mutt
