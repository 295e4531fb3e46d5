#ifndef NCRAT_MATRIX_TUPLE_HPP
#define NCRAT_MATRIX_TUPLE_HPP

#include "ncrat/linalg.hpp"
#include "ncrat/word.hpp"

#include <vector>

namespace ncrat {

/// A g-tuple X = (X_1, ..., X_g) of real n×n matrices, the point at which
/// free expressions and pencils are evaluated. With the symmetric flag set
/// every entry is bitwise symmetric.
class MatrixTuple {
 public:
  MatrixTuple() = default;
  MatrixTuple(std::vector<Matrix> entries, bool symmetric = true);

  static MatrixTuple zeros(int g, int n);
  /// 1×1 tuple from scalars.
  static MatrixTuple scalars(const std::vector<double>& values);

  int g() const noexcept { return static_cast<int>(entries_.size()); }
  int n() const noexcept { return n_; }
  bool symmetric() const noexcept { return symmetric_; }
  const Matrix& operator[](int j) const { return entries_[static_cast<std::size_t>(j)]; }
  const std::vector<Matrix>& entries() const noexcept { return entries_; }

  MatrixTuple scaled(double t) const;
  MatrixTuple operator+(const MatrixTuple& rhs) const;
  MatrixTuple operator-(const MatrixTuple& rhs) const;
  /// Block diagonal X ⊕ Y.
  MatrixTuple direct_sum(const MatrixTuple& rhs) const;

  /// X^w = X_{w_1} ··· X_{w_k}; identity for the empty word.
  Matrix power(const Word& w) const;

  /// Largest eigenvalue of Σ X_j², the squared "radius" of the tuple.
  double sum_of_squares_norm() const;

  double norm() const;

 private:
  std::vector<Matrix> entries_;
  int n_ = 0;
  bool symmetric_ = true;
};

/// L_A(X) = Σ_j A_j ⊗ X_j.
Matrix linear_pencil_part(const std::vector<Matrix>& coefficients, const MatrixTuple& x);

}  // namespace ncrat

#endif  // NCRAT_MATRIX_TUPLE_HPP
