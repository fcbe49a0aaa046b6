#pragma once

// Token stream shared by the formula, proof-script and config readers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lpcheck/formula.hpp"
#include "lpcheck/kernel.hpp"
#include "lpcheck/syntax.hpp"

namespace lpcheck::parse {

enum class Tok {
  LowerIdent,
  UpperIdent,
  Number,  // step id: digits followed by optional lowercase letters
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBrack,
  RBrack,
  Bar,
  Amp,
  Tilde,
  Arrow,
  Iff,
  Turnstile,
  Comma,
  Colon,
  Assign,
  Semicolon,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// Lexes `text`; positions are reported relative to `first_line` and columns
/// start at 1. `#` starts a comment that runs to the end of the line.
std::vector<Token> lex(std::string_view text, std::size_t first_line = 1);

std::string describe(Tok kind);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  bool at(Tok k, std::size_t ahead = 0) const { return peek(ahead).kind == k; }
  bool at_word(std::string_view w) const;
  const Token& next();
  const Token& expect(Tok k, std::string_view what);
  void expect_word(std::string_view w);
  bool at_end() const { return at(Tok::End); }
  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const;

  /// formula, lowest precedence level (`<->`).
  Formula formula();
  Term term();
  /// `[formula |-] formula`, optionally with a leading `|-`.
  Judgment judgment();

 private:
  Formula iff_level();
  Formula imp_level();
  Formula or_level();
  Formula and_level();
  Formula unary();
  Formula primary();
  Formula truth_application(const Token& predicate);
  Formula membership(Term lhs);

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace lpcheck::parse
