#include "rosserlog/parse.hpp"

#include <cctype>

namespace rosserlog {

namespace {

enum class Tok {
  Bot,
  Top,
  Ident,
  QBrace,  // "q{"
  Not,
  And,
  Or,
  Imp,
  Iff,
  Box,
  Dia,
  RBoxTok,
  RDiaTok,
  LParen,
  RParen,
  RBrace,
  End,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Bot: return "'bot'";
    case Tok::Top: return "'top'";
    case Tok::Ident: return "identifier";
    case Tok::QBrace: return "'q{'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Imp: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Box: return "'[]'";
    case Tok::Dia: return "'<>'";
    case Tok::RBoxTok: return "'[R]'";
    case Tok::RDiaTok: return "'<R>'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::RBrace: return "'}'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok tok;
  std::string text;
  int line;
  int col;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      int line = line_, col = col_;
      if (eof()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      out.push_back(next(line, col));
    }
  }

private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  void advance(size_t n = 1) {
    for (size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }
  void skip_space() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  bool match(std::string_view s) {
    if (src_.substr(pos_, s.size()) != s) return false;
    advance(s.size());
    return true;
  }

  [[noreturn]] void fail(int line, int col) {
    throw ParseError(line, col, "unrecognized character at " + std::to_string(line) + ":" +
                                    std::to_string(col),
                     {});
  }

  Token next(int line, int col) {
    // Unicode aliases first (multi-byte UTF-8 sequences).
    if (match("⊥")) return {Tok::Bot, "bot", line, col};      // ⊥
    if (match("¬")) return {Tok::Not, "~", line, col};        // ¬
    if (match("∧")) return {Tok::And, "&", line, col};        // ∧
    if (match("∨")) return {Tok::Or, "|", line, col};         // ∨
    if (match("→")) return {Tok::Imp, "->", line, col};       // →
    if (match("□")) return {Tok::Box, "[]", line, col};       // □
    if (match("◇")) return {Tok::Dia, "<>", line, col};       // ◇
    if (match("◾")) return {Tok::RBoxTok, "[R]", line, col};  // ◾

    if (match("<->")) return {Tok::Iff, "<->", line, col};
    if (match("->")) return {Tok::Imp, "->", line, col};
    if (match("[R]")) return {Tok::RBoxTok, "[R]", line, col};
    if (match("[]")) return {Tok::Box, "[]", line, col};
    if (match("<R>")) return {Tok::RDiaTok, "<R>", line, col};
    if (match("<>")) return {Tok::Dia, "<>", line, col};
    if (match("~")) return {Tok::Not, "~", line, col};
    if (match("&")) return {Tok::And, "&", line, col};
    if (match("|")) return {Tok::Or, "|", line, col};
    if (match("(")) return {Tok::LParen, "(", line, col};
    if (match(")")) return {Tok::RParen, ")", line, col};
    if (match("}")) return {Tok::RBrace, "}", line, col};

    char c = peek();
    if (c >= 'a' && c <= 'z') {
      std::string text;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        text += peek();
        advance();
      }
      if (text == "q" && peek() == '{') {
        advance();
        return {Tok::QBrace, "q{", line, col};
      }
      if (text == "bot") return {Tok::Bot, text, line, col};
      if (text == "top") return {Tok::Top, text, line, col};
      return {Tok::Ident, text, line, col};
    }
    fail(line, col);
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Fml run() {
    Fml f = parse_arrow();
    expect(Tok::End);
    return f;
  }

private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok t) const { return cur().tok == t; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void unexpected(std::vector<std::string> expected) {
    const Token& t = cur();
    std::string msg = "syntax error at " + std::to_string(t.line) + ":" +
                      std::to_string(t.col) + ": unexpected " + tok_name(t.tok);
    if (!expected.empty()) {
      msg += ", expected ";
      for (size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += i + 1 == expected.size() ? " or " : ", ";
        msg += expected[i];
      }
    }
    throw ParseError(t.line, t.col, msg, std::move(expected));
  }

  void expect(Tok t) {
    if (!at(t)) unexpected({tok_name(t)});
    take();
  }

  // -> and <-> share the lowest precedence level, right-associative.
  Fml parse_arrow() {
    Fml lhs = parse_or();
    if (at(Tok::Imp)) {
      take();
      return imp(lhs, parse_arrow());
    }
    if (at(Tok::Iff)) {
      take();
      return iff(lhs, parse_arrow());
    }
    return lhs;
  }

  Fml parse_or() {
    Fml f = parse_and();
    while (at(Tok::Or)) {
      take();
      f = lor(f, parse_and());
    }
    return f;
  }

  Fml parse_and() {
    Fml f = parse_unary();
    while (at(Tok::And)) {
      take();
      f = land(f, parse_unary());
    }
    return f;
  }

  Fml parse_unary() {
    switch (cur().tok) {
      case Tok::Not: take(); return neg(parse_unary());
      case Tok::Box: take(); return box(parse_unary());
      case Tok::Dia: take(); return dia(parse_unary());
      case Tok::RBoxTok: take(); return rbox(parse_unary());
      case Tok::RDiaTok: take(); return rdia(parse_unary());
      default: return parse_primary();
    }
  }

  Fml parse_primary() {
    switch (cur().tok) {
      case Tok::Bot: take(); return falsum();
      case Tok::Top: take(); return verum();
      case Tok::Ident: return atom(take().text);
      case Tok::QBrace: {
        take();
        Fml payload = parse_arrow();
        expect(Tok::RBrace);
        return qatom(payload);
      }
      case Tok::LParen: {
        take();
        Fml f = parse_arrow();
        expect(Tok::RParen);
        return f;
      }
      default:
        unexpected({"'bot'", "'top'", "identifier", "'q{'", "'('", "'~'", "'[]'", "'<>'",
                    "'[R]'", "'<R>'"});
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

Fml parse(std::string_view text) { return Parser(Lexer(text).run()).run(); }

}  // namespace rosserlog
