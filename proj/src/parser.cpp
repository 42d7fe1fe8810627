#include <charconv>

#include "mutt/ast.hpp"
#include "mutt/printer.hpp"

namespace mutt::ast {

namespace {

class Parser {
 public:
  Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SourceFile file(const std::string& path) {
    SourceFile f{path, {}};
    while (!at(Tok::End)) f.decls.push_back(decl());
    return f;
  }

  TermP whole_term() {
    TermP t = term();
    expect(Tok::End, "after the term");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(const char* kw) const { return at(Tok::Ident) && peek().text == kw; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string found = at(Tok::Ident) ? "`" + peek().text + "`" : token_name(peek().kind);
    throw SpannedError(tag::kSyntax, msg + ", found " + found, peek().span);
  }
  const Token& expect(Tok k, const std::string& where) {
    if (!at(k)) fail("expected " + token_name(k) + " " + where);
    return next();
  }
  void expect_kw(const char* kw) {
    if (!at_kw(kw)) fail(std::string("expected `") + kw + "`");
    next();
  }
  Name ident(const std::string& what) {
    if (!at(Tok::Ident) || is_keyword(peek().text)) fail("expected " + what);
    const Token& t = next();
    return Name{t.text, t.span};
  }
  Level number(const std::string& what) {
    if (!at(Tok::Ident)) fail("expected " + what);
    const Token& t = peek();
    Level v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) fail("expected " + what);
    next();
    return v;
  }

  // Terms.

  bool starts_atom() const {
    if (at(Tok::LParen)) return true;
    if (!at(Tok::Ident)) return false;
    return peek().text == "Univ" || !is_keyword(peek().text);
  }

  TermP term() {
    auto t = std::make_shared<Term>();
    t->span = peek().span;
    if (at_kw("fun") || at_kw("Pi")) {
      const bool fun = peek().text == "fun";
      next();
      t->kind = fun ? Term::Kind::Fun : Term::Kind::Pi;
      if (!at(Tok::LParen)) fail("expected a binder `(x : A)`");
      while (at(Tok::LParen)) t->binders.push_back(group());
      expect(fun ? Tok::FatArrow : Tok::Arrow, fun ? "after the binders of `fun`" : "after the binders of `Pi`");
      t->body = term();
      return t;
    }
    TermP a = apps();
    if (at(Tok::Arrow)) {
      next();
      t->kind = Term::Kind::Arrow;
      t->dom = a;
      t->body = term();
      return t;
    }
    return a;
  }

  TermP apps() {
    auto t = std::make_shared<Term>();
    t->span = peek().span;
    t->kind = Term::Kind::Apps;
    if (!starts_atom()) fail("expected a term");
    while (starts_atom()) t->items.push_back(atom());
    if (t->items.size() == 1 && t->items[0]->kind != Term::Kind::Name) return t->items[0];
    return t;
  }

  TermP atom() {
    auto t = std::make_shared<Term>();
    t->span = peek().span;
    if (at(Tok::LParen)) {
      next();
      TermP inner = term();
      expect(Tok::RParen, "to close `(`");
      return inner;
    }
    if (at_kw("Univ")) {
      next();
      t->kind = Term::Kind::Univ;
      t->sort = ident("a sort name after `Univ`").text;
      t->level = number("a universe level");
      return t;
    }
    t->kind = Term::Kind::Name;
    t->name = ident("an identifier").text;
    return t;
  }

  BinderGroup group() {
    BinderGroup g;
    g.span = peek().span;
    expect(Tok::LParen, "to open a binder");
    do {
      if (at(Tok::Ident) && peek().text == "_") {
        g.names.push_back(Name{"_", peek().span});
        next();
      } else {
        g.names.push_back(ident("a bound name"));
      }
    } while (at(Tok::Ident));
    expect(Tok::Colon, "after the bound names");
    g.type = term();
    if (at(Tok::At)) {
      next();
      g.sort = ident("a sort name after `@`").text;
      expect(Tok::Hash, "after the sort of a binder");
      g.level = number("a universe level after `#`");
    }
    expect(Tok::RParen, "to close the binder");
    return g;
  }

  std::vector<BinderGroup> groups() {
    std::vector<BinderGroup> gs;
    while (at(Tok::LParen)) gs.push_back(group());
    return gs;
  }

  void annotation(std::optional<SortName>& sort, std::optional<Level>& level) {
    if (!at(Tok::At)) return;
    next();
    sort = ident("a sort name after `@`").text;
    expect(Tok::Hash, "after the sort");
    level = number("a universe level after `#`");
  }

  // Declarations.

  Decl decl() {
    Decl d;
    d.span = peek().span;
    if (at_kw("sort")) {
      next();
      SortDecl s{ident("a sort name"), false, false, false};
      for (;;) {
        if (at_kw("isolated")) s.isolated = true;
        else if (at_kw("restricted")) s.restricted = true;
        else if (at_kw("irrelevant")) s.irrelevant = true;
        else break;
        next();
      }
      d.node = std::move(s);
    } else if (at_kw("positive")) {
      next();
      PositiveDecl p;
      p.name = ident("a type name");
      p.params = groups();
      expect(Tok::Colon, "before the universe of the type");
      p.cod = term();
      expect(Tok::LBrace, "to open the constructors");
      while (at_kw("constructor")) {
        next();
        p.constructors.push_back(inert_decl("a constructor name"));
      }
      expect(Tok::RBrace, "to close the constructors");
      d.node = std::move(p);
    } else if (at_kw("negative")) {
      next();
      NegativeDecl n;
      n.name = ident("a type name");
      n.params = groups();
      expect(Tok::Colon, "before the universe of the type");
      n.cod = term();
      expect_kw("as");
      n.self = ident("a name for the observed value");
      expect(Tok::LBrace, "to open the observations");
      while (at_kw("observation")) {
        next();
        Observation o;
        o.name = ident("an observation name");
        expect(Tok::Colon, "before the type of the observation");
        o.cod = term();
        annotation(o.sort, o.level);
        n.observations.push_back(std::move(o));
      }
      expect(Tok::RBrace, "to close the observations");
      d.node = std::move(n);
    } else if (at_kw("eliminator")) {
      next();
      EliminatorDecl e;
      e.name = ident("an eliminator name");
      e.params = groups();
      expect_kw("on");
      e.scrutinee = group();
      if (e.scrutinee.names.size() != 1)
        throw SpannedError(tag::kSyntax, "an eliminator has exactly one scrutinee", e.scrutinee.span);
      expect(Tok::Colon, "before the codomain");
      e.cod = term();
      annotation(e.sort, e.level);
      e.rules = rules();
      d.node = std::move(e);
    } else if (at_kw("builder")) {
      next();
      BuilderDecl b;
      b.decl = inert_decl("a builder name");
      b.rules = rules();
      d.node = std::move(b);
    } else if (at_kw("def")) {
      next();
      Def df;
      df.name = ident("a definition name");
      if (at(Tok::Colon)) {
        next();
        df.type = term();
      }
      expect(Tok::Define, "before the body of the definition");
      df.body = term();
      d.node = std::move(df);
    } else if (at_kw("check")) {
      next();
      Check c;
      c.term = term();
      if (at(Tok::Colon)) {
        next();
        c.type = term();
      }
      d.node = std::move(c);
    } else if (at_kw("normalize")) {
      next();
      d.node = Normalize{term()};
    } else if (at_kw("include")) {
      next();
      d.node = Include{expect(Tok::String, "after `include`").text};
    } else {
      fail("expected a declaration");
    }
    return d;
  }

  InertDecl inert_decl(const std::string& what) {
    InertDecl c;
    c.name = ident(what);
    c.params = groups();
    if (at_kw("rec")) {
      next();
      c.recs = groups();
    }
    expect(Tok::Colon, "before the codomain");
    c.cod = term();
    return c;
  }

  std::vector<Rule> rules() {
    std::vector<Rule> rs;
    expect(Tok::LBrace, "to open the rules");
    while (at_kw("rewrite")) rs.push_back(rule());
    expect(Tok::RBrace, "to close the rules");
    return rs;
  }

  std::vector<Name> names() {
    std::vector<Name> ns;
    while (at(Tok::Ident) && !is_keyword(peek().text)) ns.push_back(ident("a name"));
    return ns;
  }

  Rule rule() {
    Rule r;
    r.span = peek().span;
    expect_kw("rewrite");
    r.head = ident("the head of the rule");
    while (!at(Tok::Rewrites)) {
      LhsItem it;
      it.span = peek().span;
      if (at(Tok::Question)) {
        next();
        it.kind = LhsItem::Kind::Meta;
        it.name = ident("a metavariable name").text;
        if (at(Tok::LBrace)) {
          next();
          it.rec.emplace();
          while (!at(Tok::RBrace)) {
            if (!starts_atom()) fail("expected a term or `}`");
            it.rec->push_back(atom());
          }
          next();
        }
      } else if (at_kw("Pi")) {
        next();
        it.kind = LhsItem::Kind::PiHead;
        expect(Tok::At, "after `Pi` in a pattern");
        it.sort = ident("a sort name").text;
        expect(Tok::Hash, "after the sort");
        it.level = number("a universe level");
      } else {
        it.kind = LhsItem::Kind::Name;
        it.name = ident("a pattern item or `~>`").text;
      }
      r.lhs.push_back(std::move(it));
    }
    next();
    r.rhs = term();
    expect_kw("in");
    r.lin = groups();
    if (at_kw("with")) {
      next();
      r.delta = groups();
      expect_kw("via");
      r.via = names();
    }
    if (at_kw("tau")) {
      next();
      r.tau = names();
    }
    return r;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SourceFile parse(std::string_view src, const std::string& path) {
  return Parser(lex(src, path)).file(path);
}

TermP parse_term(std::string_view src, const std::string& path) {
  return Parser(lex(src, path)).whole_term();
}

}  // namespace mutt::ast
