#pragma once

#include <string_view>

#include "goh/polynomial.hpp"

namespace goh {

// Parses the expression grammar
//
//   expr     := term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := '-' factor | atom ('^' uint)?
//   atom     := rational | var | '(' expr ')'
//   rational := uint ('/' uint)?
//   var      := ('x'|'p') uint            (1-based, bounds-checked)
//
// Unary minus binds looser than '^', so -x1^2 is -(x1^2). Whitespace is
// insignificant; implicit multiplication is rejected.
// Errors are ParseError carrying the byte offset of the offending token.
Polynomial parse_expression(std::string_view text, Ambient ambient);

// Largest exponent accepted after '^'.
inline constexpr std::uint32_t kMaxParsedExponent = 1U << 16;

}  // namespace goh
