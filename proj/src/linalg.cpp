#include "ncrat/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ncrat {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix symmetrized(const Matrix& m) {
  Matrix s = 0.5 * (m + m.transpose());
  // Force bitwise symmetry; the two halves can round differently.
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < s.cols(); ++j) s(j, i) = s(i, j);
  }
  return s;
}

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector();
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double smallest_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Vector s = singular_values(m);
  return s(s.size() - 1);
}

bool is_invertible(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  Vector s = singular_values(m);
  return s(0) > 0.0 && s(s.size() - 1) > kInvertibilityRelTol * s(0);
}

double min_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

Matrix orthonormal_range(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return Matrix(m.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0) && s(r) > 0.0) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& m, double abs_tol) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const Eigen::Index n = m.cols();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > abs_tol) ++r;
  return svd.matrixV().rightCols(n - r);
}

int numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Vector s = singular_values(m);
  int r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0) && s(r) > 0.0) ++r;
  return r;
}

void normalize_column_signs(Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index arg = 0;
    m.col(j).cwiseAbs().maxCoeff(&arg);
    if (m.rows() > 0 && m(arg, j) < 0.0) m.col(j) *= -1.0;
  }
}

}  // namespace ncrat
