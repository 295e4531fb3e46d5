#ifndef NCRAT_TESTS_SUPPORT_HPP
#define NCRAT_TESTS_SUPPORT_HPP

// Shared fixtures for the unit and acceptance tests. Oracles here use plain
// Eigen arithmetic and never call into the library's evaluators.

#include "ncrat/matrix_tuple.hpp"
#include "ncrat/realization.hpp"
#include "ncrat/singular.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ncrat::testing {

inline Matrix I(Eigen::Index n) { return Matrix::Identity(n, n); }

inline Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

inline Matrix kron_oracle(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Matrix block2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  Matrix out(a.rows() + c.rows(), a.cols() + b.cols());
  out << a, b, c, d;
  return out;
}

// J⊗I − Σ A_j⊗X_j
inline Matrix pencil_oracle(const Matrix& J, const std::vector<Matrix>& A, const std::vector<Matrix>& X) {
  const Eigen::Index n = X.empty() ? 1 : X.front().rows();
  Matrix out = kron_oracle(J, I(n));
  for (std::size_t j = 0; j < A.size(); ++j) out -= kron_oracle(A[j], X[j]);
  return out;
}

// D⊗I + (B⊗I)ᵀ P(X)⁻¹ (C⊗I)
inline Matrix realization_oracle(const Realization& r, const std::vector<Matrix>& X) {
  const Eigen::Index n = X.empty() ? 1 : X.front().rows();
  Matrix out = kron_oracle(r.D, I(n));
  if (r.d() == 0) return out;
  const Matrix P = pencil_oracle(r.J, r.A, X);
  out += kron_oracle(r.B, I(n)).transpose() * P.fullPivLu().solve(kron_oracle(r.C, I(n)));
  return out;
}

inline Matrix random_symmetric(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c <= r; ++c) m(r, c) = m(c, r) = normal(rng);
  }
  return m;
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = normal(rng);
  }
  return m;
}

// Symmetric tuple with λ_max(Σ X_j²) = u·eps, u uniform in [0.05, 0.95].
inline MatrixTuple tuple_in_ball(std::mt19937_64& rng, int g, int n, double eps) {
  std::vector<Matrix> xs;
  for (int j = 0; j < g; ++j) xs.push_back(random_symmetric(rng, n));
  Matrix s = Matrix::Zero(n, n);
  for (const auto& x : xs) s += x * x;
  const double lmax = Eigen::SelfAdjointEigenSolver<Matrix>(s).eigenvalues().maxCoeff();
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  const double scale = std::sqrt(unit(rng) * eps / lmax);
  for (auto& x : xs) x *= scale;
  return MatrixTuple(std::move(xs));
}

inline double relative_error(const Matrix& got, const Matrix& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

// g=1, J=diag(1,−1), A=[[0,.5],[.5,0]], C=e₁, D=1; r(x) = 1 + 4/(4 + x²).
inline Realization R1() {
  Matrix J(2, 2);
  J << 1, 0, 0, -1;
  Matrix A(2, 2);
  A << 0, 0.5, 0.5, 0;
  Matrix C(2, 1);
  C << 1, 0;
  return make_symmetric(J, {A}, C, scalar(1.0));
}

inline double r1_scalar(double x) { return 1.0 + 4.0 / (4.0 + x * x); }

// g=1, J=I₂, A=diag(0,1), C=e₁, D=0; r ≡ 1 with a fake singularity at x=1.
inline Realization R2() {
  Matrix A = Matrix::Zero(2, 2);
  A(1, 1) = 1.0;
  Matrix C(2, 1);
  C << 1, 0;
  return make_symmetric(I(2), {A}, C, scalar(0.0));
}

// (1 − x)⁻¹ with d=1, J=A=C=1, D=0.
inline Realization one_minus_x_inverse() { return make_symmetric(I(1), {I(1)}, I(1), scalar(0.0)); }

// 1 − x: J=[[0,1],[1,0]], A=[[−1,0],[0,0]], C=e₂, D=1.
inline Realization one_minus_x() {
  Matrix J(2, 2);
  J << 0, 1, 1, 0;
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = -1.0;
  Matrix C(2, 1);
  C << 0, 1;
  return make_symmetric(J, {A}, C, scalar(1.0));
}

// J = I₂, A = diag(1, 0.5), C = (1, 1): singular at χ = [1] with kernel e₁.
inline Realization diag_example() {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 0.5;
  return make_symmetric(I(2), {A}, (Matrix(2, 1) << 1, 1).finished(), scalar(0.0));
}

// J = diag(1, −1), A = [[a, 1−a], [1−a, a−2]]: J − A is singular with the
// J-isotropic kernel (1, 1), so α = 0 and the order is positive.
inline Realization isotropic_example(double a) {
  Matrix J(2, 2);
  J << 1, 0, 0, -1;
  Matrix A(2, 2);
  A << a, 1 - a, 1 - a, a - 2;
  return make_symmetric(J, {A}, (Matrix(2, 1) << 1, 0).finished(), scalar(1.0));
}

// Random symmetric realization with J a random signature; g variables.
inline Realization random_symmetric_realization(std::mt19937_64& rng, int d, int g) {
  Matrix J = Matrix::Zero(d, d);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < d; ++i) J(i, i) = (i == 0 || coin(rng)) ? 1.0 : -1.0;
  std::vector<Matrix> A;
  for (int j = 0; j < g; ++j) A.push_back(random_symmetric(rng, d));
  return make_symmetric(J, std::move(A), random_matrix(rng, d, 1), scalar(1.0));
}

// A point on the first ray crossing of a random direction, if any. Crossings
// far from 0 are skipped: probe steps there vanish relative to ‖χ‖.
inline std::optional<MatrixTuple> singular_point(const Realization& r, std::mt19937_64& rng, int n,
                                                 double max_norm = 1e3) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<Matrix> xs;
    for (int j = 0; j < r.g(); ++j) xs.push_back(random_symmetric(rng, n));
    const MatrixTuple x(std::move(xs));
    const auto ts = singular::ray_crossings(r.pencil(), x);
    if (!ts.empty() && ts.front() * x.norm() <= max_norm) return x.scaled(ts.front());
  }
  return std::nullopt;
}

}  // namespace ncrat::testing

#endif  // NCRAT_TESTS_SUPPORT_HPP
