#include "ncrat/matrix_tuple.hpp"

#include "ncrat/errors.hpp"

#include <cmath>

namespace ncrat {

MatrixTuple::MatrixTuple(std::vector<Matrix> entries, bool symmetric)
    : entries_(std::move(entries)), symmetric_(symmetric) {
  if (entries_.empty()) throw InvalidArgument("matrix tuple needs at least one entry");
  n_ = static_cast<int>(entries_.front().rows());
  for (auto& e : entries_) {
    if (e.rows() != n_ || e.cols() != n_) {
      throw ShapeMismatch("matrix tuple entries must all be square of the same size");
    }
    if (symmetric_) e = symmetrized(e);
  }
}

MatrixTuple MatrixTuple::zeros(int g, int n) {
  return MatrixTuple(std::vector<Matrix>(static_cast<std::size_t>(g), Matrix::Zero(n, n)), true);
}

MatrixTuple MatrixTuple::scalars(const std::vector<double>& values) {
  std::vector<Matrix> entries;
  for (double v : values) entries.push_back(Matrix::Constant(1, 1, v));
  return MatrixTuple(std::move(entries), true);
}

MatrixTuple MatrixTuple::scaled(double t) const {
  std::vector<Matrix> out;
  for (const auto& e : entries_) out.push_back(t * e);
  return MatrixTuple(std::move(out), symmetric_);
}

MatrixTuple MatrixTuple::operator+(const MatrixTuple& rhs) const {
  if (rhs.g() != g() || rhs.n() != n()) throw ShapeMismatch("tuple sizes differ");
  std::vector<Matrix> out;
  for (int j = 0; j < g(); ++j) out.push_back((*this)[j] + rhs[j]);
  return MatrixTuple(std::move(out), symmetric_ && rhs.symmetric_);
}

MatrixTuple MatrixTuple::operator-(const MatrixTuple& rhs) const { return *this + rhs.scaled(-1.0); }

MatrixTuple MatrixTuple::direct_sum(const MatrixTuple& rhs) const {
  if (rhs.g() != g()) throw ShapeMismatch("tuple arities differ");
  std::vector<Matrix> out;
  for (int j = 0; j < g(); ++j) out.push_back(block_diag((*this)[j], rhs[j]));
  return MatrixTuple(std::move(out), symmetric_ && rhs.symmetric_);
}

Matrix MatrixTuple::power(const Word& w) const {
  Matrix out = Matrix::Identity(n_, n_);
  for (int letter : w.letters()) out = out * (*this)[letter];
  return out;
}

double MatrixTuple::sum_of_squares_norm() const {
  Matrix s = Matrix::Zero(n_, n_);
  for (const auto& e : entries_) s += e.transpose() * e;
  return max_eigenvalue(s);
}

double MatrixTuple::norm() const {
  double acc = 0.0;
  for (const auto& e : entries_) acc += e.squaredNorm();
  return std::sqrt(acc);
}

Matrix linear_pencil_part(const std::vector<Matrix>& coefficients, const MatrixTuple& x) {
  if (static_cast<int>(coefficients.size()) != x.g()) {
    throw ShapeMismatch("pencil has " + std::to_string(coefficients.size()) +
                        " coefficients but the tuple has " + std::to_string(x.g()) + " entries");
  }
  const Eigen::Index d = coefficients.empty() ? 0 : coefficients.front().rows();
  Matrix out = Matrix::Zero(d * x.n(), d * x.n());
  for (int j = 0; j < x.g(); ++j) out += kron(coefficients[static_cast<std::size_t>(j)], x[j]);
  return out;
}

}  // namespace ncrat
