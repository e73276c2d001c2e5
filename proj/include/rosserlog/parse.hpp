#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rosserlog/formula.hpp"

namespace rosserlog {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, std::string what, std::vector<std::string> expected_tokens)
      : std::runtime_error(std::move(what)),
        line(line),
        col(col),
        expected(std::move(expected_tokens)) {}
  int line;
  int col;
  std::vector<std::string> expected;
};

// ASCII grammar with Unicode aliases on input:
//   bot top  identifiers [a-z][a-zA-Z0-9_]*  q{A}
//   ~A  A & B  A | B  A -> B  A <-> B  []A  <>A  [R]A  <R>A
// Precedence: unary > & > | > -> / <-> (right-associative).
// & and | are left-associative. Aliases: ⊥ ¬ ∧ ∨ → □ ◇ ◾.
// Sugar (&, ->, <->, <>, <R>, top) normalizes to the six constructors.
Fml parse(std::string_view text);

}  // namespace rosserlog
