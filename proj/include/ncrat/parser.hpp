#ifndef NCRAT_PARSER_HPP
#define NCRAT_PARSER_HPP

#include "ncrat/expression.hpp"

#include <string_view>

namespace ncrat {

/// Parses an expression in g variables.
///
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | number | var | 'inv' '(' expr ')' | 'T' '(' expr ')'
///           | '(' expr ')' | matrix
///   var    := 'x' digits          (1 ≤ index ≤ g)
///   matrix := '[' row (';' row)* ']'
///   row    := expr (',' expr)*
///
/// Matrix entries may themselves be matrix-valued blocks. A 1×1 operand
/// combined with a k×k one is promoted to (operand)⊗I_k.
/// Throws ParseError on bad syntax and NotAnalyticAtZero for an inverse of
/// something singular at 0.
RationalExpr parse_expression(std::string_view text, int g);

}  // namespace ncrat

#endif  // NCRAT_PARSER_HPP
