#pragma once

// Text form of formulas and terms.
//
//   atom     := lowercase identifier
//   term     := identifier | "{" ident "|" formula "}" | "[" formula "]"
//   formula  := atom | P "[" (formula | Const) "]" | term "in" term
//             | "~" formula | formula "&" formula | formula "|" formula
//             | formula "->" formula | formula "<->" formula | "(" formula ")"
//
// Precedence, tightest first: `in`, `~`, `&`, `|`, `->` (right), `<->` (right).
// `&` and `|` associate to the left. In term position an identifier starting
// with an uppercase letter is a constant and a lowercase one is a variable; in
// formula position an uppercase identifier is a sentence constant, or a truth
// predicate when followed by `[`. `in` and `by` are reserved.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lpcheck/formula.hpp"

namespace lpcheck {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

/// Minimal parenthesisation; `(a -> b) & (b -> a)` prints as `a <-> b`.
std::string render_formula(const Formula& f);
std::string render_term(const Term& t);

bool is_reserved_word(std::string_view word);

}  // namespace lpcheck
