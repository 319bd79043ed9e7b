#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ssi/formula.hpp"

namespace ssi {

/// Syntax error in formula text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// Message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// ASCII concrete syntax
//
//   atoms      p  q1  foo_bar  bot  top
//   prefix     ~A  box A  dia A
//   infix      A & B   A | B   A -> B   A => B   A |> B   A ||> B
//
// Prefix operators bind tightest, then `&`, then `|`, then the four arrows.
// Every binary operator associates to the right. Different arrows never
// chain without parentheses: `p -> q |> r` is rejected.

/// Parses one formula. Throws ParseError.
Formula parse(std::string_view text);

/// Minimal-parenthesis ASCII rendering; `parse(print(f)) == f`.
/// `bot -> bot` is shown as `top` and `A -> bot` as `~A`.
std::string print(const Formula& f);

/// Same layout as print() with logical symbols instead of ASCII operators.
std::string print_unicode(const Formula& f);

/// AST dump as `{"op": "...", "args": [...]}`; variables carry their name
/// as the single argument.
std::string to_json(const Formula& f);

/// Inverse of to_json(). Throws std::invalid_argument on malformed input.
Formula formula_from_json(std::string_view text);

}  // namespace ssi
