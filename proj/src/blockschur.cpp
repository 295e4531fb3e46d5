#include "ncrat/blockschur.hpp"

#include "ncrat/errors.hpp"

namespace ncrat::blockschur {

namespace {

Matrix checked_inverse(const Matrix& m) {
  if (!is_invertible(m)) throw PivotSingular();
  return m.partialPivLu().inverse();
}

}  // namespace

Matrix BlockMatrix::assemble() const {
  Matrix m(p() + q(), p() + q());
  m << Phi, Omega.transpose(), Omega, Psi;
  return m;
}

BlockMatrix BlockMatrix::split(const Matrix& m, int p) {
  if (m.rows() != m.cols() || p < 0 || p > m.rows()) throw ShapeMismatch("bad block split");
  const auto q = m.rows() - p;
  return BlockMatrix{m.topLeftCorner(p, p), m.bottomLeftCorner(q, p), m.bottomRightCorner(q, q)};
}

Matrix schur_complement(const BlockMatrix& b, Pivot pivot) {
  if (b.Omega.rows() != b.q() || b.Omega.cols() != b.p()) throw ShapeMismatch("Omega must be q×p");
  if (pivot == Pivot::Psi) return b.Phi - b.Omega.transpose() * checked_inverse(b.Psi) * b.Omega;
  return b.Psi - b.Omega * checked_inverse(b.Phi) * b.Omega.transpose();
}

Matrix block_inverse(const BlockMatrix& b, Pivot pivot) {
  const int p = b.p();
  const int q = b.q();
  const Matrix s = schur_complement(b, pivot);
  if (!is_invertible(s)) throw SchurSingular();
  const Matrix s_inv = s.partialPivLu().inverse();
  Matrix left = Matrix::Identity(p + q, p + q);
  Matrix mid = Matrix::Zero(p + q, p + q);
  Matrix right = Matrix::Identity(p + q, p + q);
  if (pivot == Pivot::Psi) {
    const Matrix psi_inv = checked_inverse(b.Psi);
    left.bottomLeftCorner(q, p) = -psi_inv * b.Omega;
    mid.topLeftCorner(p, p) = s_inv;
    mid.bottomRightCorner(q, q) = psi_inv;
    right.topRightCorner(p, q) = -b.Omega.transpose() * psi_inv;
  } else {
    const Matrix phi_inv = checked_inverse(b.Phi);
    left.topRightCorner(p, q) = -phi_inv * b.Omega.transpose();
    mid.topLeftCorner(p, p) = phi_inv;
    mid.bottomRightCorner(q, q) = s_inv;
    right.bottomLeftCorner(q, p) = -b.Omega * phi_inv;
  }
  return left * mid * right;
}

Vector kernel_from_schur(const BlockMatrix& b, const Vector& zeta) {
  if (zeta.size() != b.p()) throw ShapeMismatch("zeta must have length p");
  const Matrix s = schur_complement(b, Pivot::Psi);
  const double residual = (s * zeta).norm();
  if (residual > 1e-10 * std::max(1.0, zeta.norm())) throw NotInKernel(residual);
  Vector out(b.p() + b.q());
  out << zeta, -b.Psi.partialPivLu().solve(b.Omega * zeta);
  return out;
}

}  // namespace ncrat::blockschur
