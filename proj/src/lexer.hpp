#pragma once

// Shared tokenizer for the structure DSL and the formula grammar.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mtg/error.hpp"

namespace mtg::detail {

enum class TokenKind { Identifier, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is(std::string_view symbol) const { return kind == TokenKind::Symbol && text == symbol; }
  bool is_word(std::string_view word) const {
    return kind == TokenKind::Identifier && text == word;
  }
};

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

inline std::vector<Token> tokenize(std::string_view text) {
  static constexpr std::string_view kLong[] = {"<->", "->"};
  static constexpr std::string_view kShort = "{}(),=/.~&|!;";

  std::vector<Token> out;
  std::size_t line = 1, column = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = column;
    if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      tok.kind = TokenKind::Identifier;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (auto sym : kLong) {
      if (text.substr(i, sym.size()) == sym) {
        tok.kind = TokenKind::Symbol;
        tok.text = std::string(sym);
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched && kShort.find(c) != std::string_view::npos) {
      tok.kind = TokenKind::Symbol;
      tok.text = std::string(1, c);
      advance(1);
      matched = true;
    }
    if (!matched) {
      throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = pos_ + ahead;
    return k < tokens_.size() ? tokens_[k] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool accept(std::string_view symbol) {
    if (peek().is(symbol)) {
      next();
      return true;
    }
    return false;
  }
  const Token& expect(std::string_view symbol) {
    if (!peek().is(symbol)) fail("expected '" + std::string(symbol) + "'");
    return next();
  }
  const Token& expect_word(std::string_view word) {
    if (!peek().is_word(word)) fail("expected '" + std::string(word) + "'");
    return next();
  }
  const Token& expect_identifier() {
    if (peek().kind != TokenKind::Identifier) fail("expected identifier");
    return next();
  }
  std::size_t expect_number() {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier || t.text.empty() ||
        t.text.find_first_not_of("0123456789") != std::string::npos || t.text.size() > 9) {
      fail("expected number");
    }
    next();
    return static_cast<std::size_t>(std::stoul(t.text));
  }
  bool at_end() const { return peek().kind == TokenKind::End; }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(message + ", found " + found, t.line, t.column);
  }
  [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
    throw ParseError(message, t.line, t.column);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace mtg::detail
