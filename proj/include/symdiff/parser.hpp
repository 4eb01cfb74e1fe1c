#pragma once

#include <cstddef>
#include <string_view>

#include "symdiff/poly.hpp"

namespace symdiff {

/// Parses a polynomial expression in `ring`.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' INT)?
///   primary := INT | IDENT | '(' expr ')'
///
/// `t` names the coefficient parameter on domains that have one. Division is
/// only by constants. Juxtaposition ("x y", "2x") is rejected.
///
/// Errors carry the line and column of the offending token; `line` and
/// `column` locate the start of `text` inside a larger file.
/// Throws ParseError, UndeclaredVariable, DivisionByZero, NonUnitDivisor.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, std::size_t line = 1,
                            std::size_t column = 1);

} // namespace symdiff
