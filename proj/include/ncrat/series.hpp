#ifndef NCRAT_SERIES_HPP
#define NCRAT_SERIES_HPP

#include "ncrat/expression.hpp"
#include "ncrat/polynomial.hpp"

#include <optional>

namespace ncrat {

/// Power series coefficients of e about 0 for all words of length at most
/// max_degree. Inverses use b_∅ = a_∅⁻¹, b_w = −a_∅⁻¹ Σ_{w=uv, u≠∅} a_u b_v.
/// Coefficients that come out exactly zero are omitted.
CoefficientMap series_coefficients(const RationalExpr& e, int max_degree);

/// First word (in (length, lex) order) whose coefficients differ by more than
/// rel_tol·max(1, ‖coefficient‖); missing entries count as zero.
std::optional<Word> first_series_mismatch(const CoefficientMap& a, const CoefficientMap& b,
                                          double rel_tol);

}  // namespace ncrat

#endif  // NCRAT_SERIES_HPP
