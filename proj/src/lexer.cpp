#include "mutt/lexer.hpp"

#include <cctype>

namespace mutt {

std::string token_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string";
    case Tok::LParen: return "`(`";
    case Tok::RParen: return "`)`";
    case Tok::LBrace: return "`{`";
    case Tok::RBrace: return "`}`";
    case Tok::Colon: return "`:`";
    case Tok::Define: return "`:=`";
    case Tok::FatArrow: return "`=>`";
    case Tok::Arrow: return "`->`";
    case Tok::Rewrites: return "`~>`";
    case Tok::At: return "`@`";
    case Tok::Hash: return "`#`";
    case Tok::Question: return "`?`";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(std::string_view src, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
  auto is_start = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_cont = [&](char c) { return is_start(c) || c == '\'' || c == '^'; };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (starts("--")) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.span = Span{file, line, col};
    if (is_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_cont(src[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw SpannedError(tag::kSyntax, "unterminated string", t.span);
      t.kind = Tok::String;
      t.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j + 1 - i);
      out.push_back(std::move(t));
      continue;
    }
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static constexpr Sym syms[] = {{":=", Tok::Define}, {"=>", Tok::FatArrow}, {"->", Tok::Arrow},
                                   {"~>", Tok::Rewrites}, {"(", Tok::LParen},  {")", Tok::RParen},
                                   {"{", Tok::LBrace},   {"}", Tok::RBrace},   {":", Tok::Colon},
                                   {"@", Tok::At},       {"#", Tok::Hash},     {"?", Tok::Question}};
    bool matched = false;
    for (const auto& s : syms) {
      if (starts(s.text)) {
        t.kind = s.kind;
        t.text = std::string(s.text);
        advance(s.text.size());
        out.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (!matched) throw SpannedError(tag::kSyntax, std::string("unexpected character `") + c + "`", t.span);
  }
  Token end;
  end.kind = Tok::End;
  end.span = Span{file, line, col};
  out.push_back(std::move(end));
  return out;
}

}  // namespace mutt
