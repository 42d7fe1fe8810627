#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mutt/diagnostics.hpp"

namespace mutt {

// A KernelError that knows where in the source it arose.
class SpannedError : public KernelError {
 public:
  SpannedError(std::string tag, const std::string& msg, Span span)
      : KernelError(std::move(tag), msg), span_(std::move(span)) {}
  const Span& span() const { return span_; }

 private:
  Span span_;
};

enum class Tok {
  Ident,
  String,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Colon,
  Define,    // :=
  FatArrow,  // =>
  Arrow,     // ->
  Rewrites,  // ~>
  At,
  Hash,
  Question,
  End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

std::string token_name(Tok k);

// Identifiers are [A-Za-z0-9_][A-Za-z0-9_'^]*; `--` starts a line comment.
// Throws SpannedError (tag "syntax") on stray characters.
std::vector<Token> lex(std::string_view src, const std::string& file);

}  // namespace mutt
