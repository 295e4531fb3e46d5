#ifndef NCRAT_POLYNOMIAL_HPP
#define NCRAT_POLYNOMIAL_HPP

#include "ncrat/linalg.hpp"
#include "ncrat/matrix_tuple.hpp"
#include "ncrat/word.hpp"

#include <map>

namespace ncrat {

/// Word-indexed matrix coefficients, ordered by (length, lex).
using CoefficientMap = std::map<Word, Matrix>;

/// A free k1×k2 matrix-valued polynomial p = Σ_w P_w w, evaluated as
/// p(X) = Σ_w P_w ⊗ X^w. Coefficients that are exactly zero are dropped, so
/// the coefficient map is canonical.
class FreePolynomial {
 public:
  FreePolynomial(int rows, int cols, int g);

  static FreePolynomial constant(const Matrix& value, int g);
  /// coefficient · w
  static FreePolynomial monomial(const Word& w, const Matrix& coefficient, int g);
  static FreePolynomial variable(int letter, int g);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int g() const noexcept { return g_; }
  const CoefficientMap& coefficients() const noexcept { return coeffs_; }

  /// P_w, or the zero matrix when w has no term.
  Matrix coefficient(const Word& w) const;
  Matrix value_at_zero() const { return coefficient(Word()); }
  int degree() const;
  bool is_zero() const noexcept { return coeffs_.empty(); }

  void add_term(const Word& w, const Matrix& coefficient);

  FreePolynomial operator+(const FreePolynomial& rhs) const;
  FreePolynomial operator*(const FreePolynomial& rhs) const;
  FreePolynomial scaled(double c) const;
  /// pᵀ = Σ P_wᵀ wᵀ.
  FreePolynomial transposed() const;
  /// Coefficients replaced by P_w ⊗ I_k (used to promote scalars).
  FreePolynomial lifted(int k) const;

  Matrix evaluate(const MatrixTuple& x) const;

  bool operator==(const FreePolynomial& rhs) const;

 private:
  int rows_;
  int cols_;
  int g_;
  CoefficientMap coeffs_;
};

}  // namespace ncrat

#endif  // NCRAT_POLYNOMIAL_HPP
