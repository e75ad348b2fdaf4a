#pragma once

#include <string>
#include <vector>

#include "gcx/polynomial.hpp"

namespace gcx {

/// Recursive-descent parser for polynomial expressions.
///
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' uint)?
///   base   := rational | name | '(' expr ')'
///
/// Rational literals are `p` or `p/q`; the leading '-' form covers canonical
/// output whose first term is negative. Variables not listed in
/// `variable_order` are rejected. Exponents must be non-negative integers.
Polynomial parse_expression(const std::string& text,
                            const std::vector<std::string>& variable_order);

/// Variable names appearing in `text`, ordered: x1..xn numerically when all
/// names have that shape, otherwise the alias order x, y, z.
std::vector<std::string> scan_variables(const std::string& text);

}  // namespace gcx
