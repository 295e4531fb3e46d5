#include "ncrat/realization.hpp"

#include "ncrat/equivalence.hpp"
#include "ncrat/errors.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace ncrat {

namespace {

constexpr double kOrbitRankTol = 1e-10;

Matrix lifted(const Matrix& m, int n) { return kron(m, Matrix::Identity(n, n)); }

// Orthonormal basis of span{ M^w start } (all words w), grown one word length
// at a time until the dimension stops increasing.
Matrix reachable_basis(const std::vector<Matrix>& maps, const Matrix& start) {
  Matrix v = orthonormal_range(start, kOrbitRankTol);
  for (;;) {
    Matrix w(v.rows(), v.cols() * static_cast<Eigen::Index>(maps.size() + 1));
    w.leftCols(v.cols()) = v;
    for (std::size_t j = 0; j < maps.size(); ++j) {
      w.middleCols(v.cols() * static_cast<Eigen::Index>(j + 1), v.cols()) = maps[j] * v;
    }
    Matrix next = orthonormal_range(w, kOrbitRankTol);
    if (next.cols() == v.cols()) return v;
    v = std::move(next);
  }
}

std::vector<Matrix> transposed_all(const std::vector<Matrix>& ms) {
  std::vector<Matrix> out;
  for (const auto& m : ms) out.push_back(m.transpose());
  return out;
}

// Pencil J − L_A with J symmetric and invertible, rewritten with a signature
// matrix: J = E Ĵ Eᵀ, so J − L_A = E(Ĵ − L_{E⁻¹AE⁻ᵀ})Eᵀ.
Realization signature_form(const Matrix& j, const std::vector<Matrix>& a, const Matrix& c, const Matrix& d) {
  if (j.rows() == 0) return make_symmetric(j, a, c, d);
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(j));
  const Vector& lambda = es.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  if (lambda.cwiseAbs().minCoeff() <= kInvertibilityRelTol * scale) {
    throw SymmetrizationFailed("pencil constant term is singular");
  }
  Vector inv_root = lambda.cwiseAbs().cwiseSqrt().cwiseInverse();
  Matrix e_inv = inv_root.asDiagonal() * es.eigenvectors().transpose();
  Matrix signature = Matrix::Zero(j.rows(), j.rows());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) signature(i, i) = lambda(i) > 0.0 ? 1.0 : -1.0;
  std::vector<Matrix> a2;
  for (const auto& aj : a) a2.push_back(symmetrized(e_inv * aj * e_inv.transpose()));
  return make_symmetric(signature, std::move(a2), e_inv * c, d);
}

Realization minimize_general(const Realization& r) {
  if (r.d() == 0) return r;
  Eigen::PartialPivLU<Matrix> lu(r.J);
  std::vector<Matrix> m;
  for (const auto& aj : r.A) m.push_back(lu.solve(aj));
  Matrix c = lu.solve(r.C);
  Matrix b = r.B;

  // Full-rank steps keep the original basis so exact data stays exact.
  Matrix v = reachable_basis(m, c);
  if (v.cols() < r.d()) {
    for (auto& mj : m) mj = v.transpose() * mj * v;
    c = v.transpose() * c;
    b = v.transpose() * b;
  }

  Matrix u = reachable_basis(transposed_all(m), b);
  if (u.cols() < c.rows()) {
    for (auto& mj : m) mj = u.transpose() * mj * u;
    c = u.transpose() * c;
    b = u.transpose() * b;
  }

  const auto d = c.rows();
  return make_general(Matrix::Identity(d, d), std::move(m), std::move(b), std::move(c), r.D);
}

Realization minimize_symmetric(const Realization& r) {
  if (r.d() == 0) return r;
  std::vector<Matrix> m;
  for (const auto& aj : r.A) m.push_back(r.J * aj);
  Matrix v = reachable_basis(m, r.J * r.C);
  if (v.cols() == 0) return constant_realization(r.D, r.g());
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(v.transpose() * r.J * v));
  const Vector& lambda = es.eigenvalues();
  const double scale = lambda.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) > kOrbitRankTol * scale) keep.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(keep.size());
  Matrix e(r.d(), k);
  Matrix signature = Matrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double l = lambda(keep[static_cast<std::size_t>(i)]);
    e.col(i) = v * es.eigenvectors().col(keep[static_cast<std::size_t>(i)]) / std::sqrt(std::abs(l));
    signature(i, i) = l > 0.0 ? 1.0 : -1.0;
  }
  std::vector<Matrix> a2;
  for (const auto& aj : r.A) a2.push_back(symmetrized(e.transpose() * aj * e));
  return make_symmetric(signature, std::move(a2), e.transpose() * r.C, r.D);
}

// Diagonal similarity of a monic realization balancing, for each state, the
// outgoing data (row of every A_j without the diagonal, row of C) against the
// incoming data (column of every A_j, row of B). Afterwards C's leading entry
// in each row is made positive.
Realization normalize_basis(Realization r) {
  auto rescale = [&r](int i, double s) {  // x ↦ S⁻¹x, S = diag(.., s, ..)
    r.C.row(i) /= s;
    r.B.row(i) *= s;
    for (auto& aj : r.A) {
      aj.row(i) /= s;
      aj.col(i) *= s;
    }
  };
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool changed = false;
    for (int i = 0; i < r.d(); ++i) {
      double out = r.C.row(i).squaredNorm();
      double in = r.B.row(i).squaredNorm();
      for (const auto& aj : r.A) {
        out += aj.row(i).squaredNorm() - aj(i, i) * aj(i, i);
        in += aj.col(i).squaredNorm() - aj(i, i) * aj(i, i);
      }
      if (!(out > 0.0) || !(in > 0.0)) continue;
      const double log_s = 0.25 * std::log(out / in);
      if (std::abs(log_s) <= 1e-10) continue;
      rescale(i, std::exp(log_s));
      changed = true;
    }
    if (!changed) break;
  }
  const double c_scale = std::max(1.0, r.C.norm());
  for (int i = 0; i < r.d(); ++i) {
    for (Eigen::Index k = 0; k < r.C.cols(); ++k) {
      if (std::abs(r.C(i, k)) > 1e-12 * c_scale) {
        if (r.C(i, k) < 0.0) rescale(i, -1.0);
        break;
      }
    }
  }
  return r;
}

Realization realize_node(const RationalExpr& e, bool minimize_steps) {
  using Kind = RationalExpr::Kind;
  Realization out;
  switch (e.kind()) {
    case Kind::Poly:
      out = polynomial_realization(e.polynomial());
      break;
    case Kind::Sum:
      out = realize_node(e.children().front(), minimize_steps);
      for (std::size_t i = 1; i < e.children().size(); ++i) {
        out = sum_realization(out, realize_node(e.children()[i], minimize_steps));
      }
      break;
    case Kind::Product:
      out = realize_node(e.children().front(), minimize_steps);
      for (std::size_t i = 1; i < e.children().size(); ++i) {
        out = product_realization(out, realize_node(e.children()[i], minimize_steps));
      }
      break;
    case Kind::Inverse:
      out = linearized_inverse(realize_node(e.children().front(), minimize_steps));
      break;
    case Kind::Transpose:
      out = transpose_realization(realize_node(e.children().front(), minimize_steps));
      break;
    case Kind::ScalarMul:
      out = scale_realization(e.scalar(), realize_node(e.children().front(), minimize_steps));
      break;
  }
  out.variant = Realization::Variant::General;
  return minimize_steps ? minimize_general(out) : out;
}

}  // namespace

Matrix Pencil::evaluate(const MatrixTuple& x) const {
  if (x.g() != g()) throw ShapeMismatch("tuple arity does not match the pencil");
  Matrix out = lifted(J0, x.n());
  out -= linear_pencil_part(A, x);
  return out;
}

double invertibility_margin(const Pencil& p, const MatrixTuple& x) {
  if (p.d() == 0) return std::numeric_limits<double>::infinity();
  return smallest_singular_value(p.evaluate(x));
}

Matrix DescriptorRealization::value_at_zero() const {
  if (d() == 0) return D;
  return D + B.transpose() * J.partialPivLu().solve(C);
}

void validate(const Realization& r) {
  const auto d = r.J.rows();
  if (r.J.cols() != d) throw ShapeMismatch("J must be square");
  for (const auto& aj : r.A) {
    if (aj.rows() != d || aj.cols() != d) throw ShapeMismatch("each A_j must be d×d");
  }
  if (r.A.empty()) throw InvalidArgument("a realization needs at least one variable");
  if (r.B.rows() != d || r.C.rows() != d) throw ShapeMismatch("B and C must have d rows");
  if (r.B.cols() != r.D.rows() || r.C.cols() != r.D.cols()) throw ShapeMismatch("B, C and D disagree on size");
  if (!r.symmetric()) return;
  if (r.J != r.J.transpose()) throw InvalidArgument("J must be symmetric");
  if (d > 0 && ((r.J * r.J - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)) {
    throw InvalidArgument("J must satisfy J² = I");
  }
  for (const auto& aj : r.A) {
    if (aj != aj.transpose()) throw InvalidArgument("A_j must be symmetric");
  }
  if (r.B != r.C) throw InvalidArgument("a symmetric realization has B = C");
}

Realization make_symmetric(Matrix J, std::vector<Matrix> A, Matrix C, Matrix D) {
  Realization r;
  r.variant = Realization::Variant::Symmetric;
  // Roundoff asymmetry is removed; anything larger is an input error.
  auto near_symmetric = [](const Matrix& m) {
    return m.rows() == m.cols() && (m - m.transpose()).norm() <= 1e-10 * std::max(1.0, m.norm());
  };
  if (!near_symmetric(J)) throw InvalidArgument("J must be symmetric");
  for (const auto& aj : A) {
    if (!near_symmetric(aj)) throw InvalidArgument("A_j must be symmetric");
  }
  r.J = symmetrized(J);
  for (auto& aj : A) aj = symmetrized(aj);
  r.A = std::move(A);
  r.B = C;
  r.C = std::move(C);
  r.D = std::move(D);
  validate(r);
  return r;
}

Realization make_general(Matrix J, std::vector<Matrix> A, Matrix B, Matrix C, Matrix D) {
  Realization r;
  r.variant = Realization::Variant::General;
  r.J = std::move(J);
  r.A = std::move(A);
  r.B = std::move(B);
  r.C = std::move(C);
  r.D = std::move(D);
  validate(r);
  return r;
}

Realization constant_realization(const Matrix& D, int g) {
  Realization r;
  r.variant = Realization::Variant::General;
  r.J = Matrix(0, 0);
  r.A.assign(static_cast<std::size_t>(g), Matrix(0, 0));
  r.B = Matrix(0, D.rows());
  r.C = Matrix(0, D.cols());
  r.D = D;
  validate(r);
  return r;
}

Matrix eval_realization(const Realization& r, const MatrixTuple& x) {
  if (x.g() != r.g()) throw ShapeMismatch("tuple arity does not match the realization");
  const int n = x.n();
  if (r.d() == 0) return lifted(r.D, n);
  Matrix p = r.pencil().evaluate(x);
  if (!is_invertible(p)) throw PencilSingular(smallest_singular_value(p));
  Matrix out = lifted(r.D, n) + lifted(r.B, n).transpose() * p.partialPivLu().solve(lifted(r.C, n));
  if (r.symmetric() && x.symmetric() && r.D == r.D.transpose()) out = symmetrized(out);
  return out;
}

CoefficientMap series_coefficients(const Realization& r, int max_degree) {
  CoefficientMap out;
  auto put = [&out](const Word& w, const Matrix& m) {
    if (!(m.array() == 0.0).all()) out.emplace(w, m);
  };
  put(Word(), r.value_at_zero());
  if (r.d() == 0) return out;
  Eigen::PartialPivLU<Matrix> lu(r.J);
  std::vector<Matrix> m;
  for (const auto& aj : r.A) m.push_back(lu.solve(aj));
  // u_w = M_{w_1} u_{w_2..}, with u_∅ = J⁻¹C.
  std::map<Word, Matrix> u;
  u.emplace(Word(), lu.solve(r.C));
  const Matrix bt = r.B.transpose();
  for (const auto& w : words_up_to(r.g(), max_degree)) {
    if (w.empty()) continue;
    Matrix uw = m[static_cast<std::size_t>(w[0])] * u.at(w.tail(1));
    put(w, bt * uw);
    u.emplace(w, std::move(uw));
  }
  return out;
}

Realization polynomial_realization(const FreePolynomial& p) {
  const int k2 = p.cols();
  const int g = p.g();
  Realization out = constant_realization(p.value_at_zero(), g);
  for (const auto& [w, coeff] : p.coefficients()) {
    if (w.empty()) continue;
    // Chain x_{w_1} → ... → x_{w_k}: states 0..k, each a copy of ℝ^{k2}.
    const int k = static_cast<int>(w.size());
    const int blocks = k + 1;
    std::vector<Matrix> a(static_cast<std::size_t>(g), Matrix::Zero(blocks * k2, blocks * k2));
    for (int m = 0; m < k; ++m) {
      a[static_cast<std::size_t>(w[static_cast<std::size_t>(m)])].block(m * k2, (m + 1) * k2, k2, k2).setIdentity();
    }
    Matrix b = Matrix::Zero(blocks * k2, p.rows());
    b.topRows(k2) = coeff.transpose();
    Matrix c = Matrix::Zero(blocks * k2, k2);
    c.bottomRows(k2).setIdentity();
    Realization chain = make_general(Matrix::Identity(blocks * k2, blocks * k2), std::move(a), std::move(b),
                                     std::move(c), Matrix::Zero(p.rows(), k2));
    out = sum_realization(out, chain);
  }
  return out;
}

Realization sum_realization(const Realization& a, const Realization& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("cannot add realizations of different shape");
  if (a.g() != b.g()) throw ShapeMismatch("realizations have different variable counts");
  std::vector<Matrix> as;
  for (int j = 0; j < a.g(); ++j) as.push_back(block_diag(a.A[j], b.A[j]));
  Matrix bb(a.d() + b.d(), a.rows());
  bb << a.B, b.B;
  Matrix cc(a.d() + b.d(), a.cols());
  cc << a.C, b.C;
  if (a.symmetric() && b.symmetric()) {
    return make_symmetric(block_diag(a.J, b.J), std::move(as), std::move(cc), a.D + b.D);
  }
  return make_general(block_diag(a.J, b.J), std::move(as), std::move(bb), std::move(cc), a.D + b.D);
}

Realization product_realization(const Realization& a, const Realization& b) {
  if (a.cols() != b.rows()) throw ShapeMismatch("inner dimensions differ in realization product");
  if (a.g() != b.g()) throw ShapeMismatch("realizations have different variable counts");
  const int d = a.d() + b.d();
  Matrix j = Matrix::Zero(d, d);
  j.topLeftCorner(a.d(), a.d()) = a.J;
  j.topRightCorner(a.d(), b.d()) = -a.C * b.B.transpose();
  j.bottomRightCorner(b.d(), b.d()) = b.J;
  std::vector<Matrix> as;
  for (int k = 0; k < a.g(); ++k) as.push_back(block_diag(a.A[k], b.A[k]));
  Matrix bb(d, a.rows());
  bb << a.B, b.B * a.D.transpose();
  Matrix cc(d, b.cols());
  cc << a.C * b.D, b.C;
  return make_general(std::move(j), std::move(as), std::move(bb), std::move(cc), a.D * b.D);
}

Realization scale_realization(double c, const Realization& r) {
  Realization out = r;
  if (!r.symmetric()) {
    out.C *= c;
    out.D *= c;
    return out;
  }
  if (c == 0.0) return constant_realization(Matrix::Zero(r.rows(), r.cols()), r.g());
  // c·Cᵀ(J − L_A)⁻¹C = (√|c| C)ᵀ(sign(c)J − L_{sign(c)A})⁻¹(√|c| C).
  const double sgn = c > 0.0 ? 1.0 : -1.0;
  out.J = sgn * r.J;
  for (auto& aj : out.A) aj *= sgn;
  out.C *= std::sqrt(std::abs(c));
  out.B = out.C;
  out.D *= c;
  return out;
}

Realization transpose_realization(const Realization& r) {
  Realization out = r;
  out.J = r.J.transpose();
  for (auto& aj : out.A) aj.transposeInPlace();
  out.B = r.C;
  out.C = r.B;
  out.D = r.D.transpose();
  return out;
}

Realization linearized_inverse(const Realization& r) {
  if (r.rows() != r.cols()) throw ShapeMismatch("only square realizations can be inverted");
  if (!is_invertible(r.value_at_zero())) throw ValueAtZeroSingular();
  const int d = r.d();
  const int l = r.rows();
  // Schur complement of the (1,1) block of [[J − L_A, −C], [Bᵀ, D]] is r.
  Matrix j(d + l, d + l);
  j << r.J, -r.C, r.B.transpose(), r.D;
  std::vector<Matrix> as;
  for (const auto& aj : r.A) as.push_back(block_diag(aj, Matrix::Zero(l, l)));
  Matrix io = Matrix::Zero(d + l, l);
  io.bottomRows(l).setIdentity();
  return make_general(std::move(j), std::move(as), io, io, Matrix::Zero(l, l));
}

Realization realize(const RationalExpr& e, RealizeOptions options) {
  Realization out = realize_node(e, options.minimize);
  if (options.minimize) out = normalize_basis(minimize_general(out));
  return out;
}

MinimalityReport minimality_check(const Realization& r) {
  MinimalityReport rep;
  if (r.d() == 0) return rep;
  if (r.symmetric()) {
    std::vector<Matrix> m;
    for (const auto& aj : r.A) m.push_back(r.J * aj);
    Matrix v = reachable_basis(m, r.J * r.C);
    rep.reach_rank = static_cast<int>(v.cols());
    rep.obs_rank = v.cols() == 0 ? 0 : numerical_rank(r.J * v, kOrbitRankTol);
  } else {
    Eigen::PartialPivLU<Matrix> lu(r.J);
    std::vector<Matrix> m;
    for (const auto& aj : r.A) m.push_back(lu.solve(aj));
    rep.reach_rank = static_cast<int>(reachable_basis(m, lu.solve(r.C)).cols());
    rep.obs_rank = static_cast<int>(reachable_basis(transposed_all(m), r.B).cols());
  }
  rep.is_minimal = rep.reach_rank == r.d() && rep.obs_rank == r.d();
  return rep;
}

Realization minimize(const Realization& r) {
  return r.symmetric() ? minimize_symmetric(r) : minimize_general(r);
}

Realization invert_realization(const Realization& r) {
  if (r.rows() != r.cols()) throw ShapeMismatch("only square realizations can be inverted");
  // r(0) = D + BᵀJ⁻¹C may cancel to roundoff, so singularity is judged
  // against the size of the terms rather than of the result.
  const double scale =
      r.D.norm() + (r.d() == 0 ? 0.0 : r.B.norm() * r.J.partialPivLu().solve(r.C).norm());
  auto invertible_at_scale = [scale](const Matrix& m) {
    return is_invertible(m) && smallest_singular_value(m) > kInvertibilityRelTol * scale;
  };
  if (!invertible_at_scale(r.value_at_zero())) throw ValueAtZeroSingular();
  const bool woodbury = invertible_at_scale(r.D);
  if (!r.symmetric()) {
    if (!woodbury) return minimize_general(linearized_inverse(r));
    // (D + BᵀP⁻¹C)⁻¹ = D⁻¹ − D⁻¹Bᵀ(P + CD⁻¹Bᵀ)⁻¹CD⁻¹.
    const Matrix d_inv = r.D.inverse();
    Realization out = make_general(r.J + r.C * d_inv * r.B.transpose(), r.A, -r.B * d_inv.transpose(),
                                   r.C * d_inv, d_inv);
    return minimize_general(out);
  }
  const int d = r.d();
  const int l = r.rows();
  if (woodbury) {
    // D⁻¹ + (CD⁻¹)ᵀ(−(J + CD⁻¹Cᵀ) + L_A)⁻¹(CD⁻¹).
    const Matrix d_inv = symmetrized(r.D.inverse());
    std::vector<Matrix> neg;
    for (const auto& aj : r.A) neg.push_back(-aj);
    return minimize_symmetric(
        signature_form(-(r.J + r.C * d_inv * r.C.transpose()), neg, r.C * d_inv, d_inv));
  }
  // [[−J + L_A, −C], [−Cᵀ, D]] has Schur complement r, so r⁻¹ is its
  // lower right inverse block.
  Matrix j(d + l, d + l);
  j << -r.J, -r.C, -r.C.transpose(), r.D;
  std::vector<Matrix> as;
  for (const auto& aj : r.A) as.push_back(block_diag(-aj, Matrix::Zero(l, l)));
  Matrix io = Matrix::Zero(d + l, l);
  io.bottomRows(l).setIdentity();
  return minimize_symmetric(signature_form(j, as, io, Matrix::Zero(l, l)));
}

double sampled_difference(const Realization& a, const Realization& b, double epsilon, int count,
                          std::uint64_t seed) {
  SamplingBox box;
  box.epsilon = epsilon;
  box.sizes = {1, 2, 3};
  box.count = count;
  box.seed = seed;
  double worst = 0.0;
  for (const auto& x : sample_tuples(box, a.g())) {
    try {
      Matrix va = eval_realization(a, x);
      Matrix vb = eval_realization(b, x);
      worst = std::max(worst, (va - vb).norm() / std::max(1.0, va.norm()));
    } catch (const PencilSingular&) {
    }
  }
  return worst;
}

Realization symmetrize(const Realization& r) {
  if (r.symmetric()) return r;
  if (r.rows() != r.cols()) throw NotSymmetricFunction("a non-square function is not symmetric");
  if (sampled_difference(r, transpose_realization(r)) > 1e-8) {
    throw NotSymmetricFunction("r(X)ᵀ differs from r(X) on a sample");
  }
  if ((r.D - r.D.transpose()).norm() > 1e-10 * std::max(1.0, r.D.norm())) {
    throw SymmetrizationFailed("D is not symmetric");
  }
  const Realization m = minimize_general(r);
  const int d = m.d();
  const int l = m.rows();
  if (d == 0) return make_symmetric(Matrix(0, 0), m.A, Matrix(0, l), symmetrized(m.D));

  // Intertwiner T: T A_j = A_jᵀ T and T C = B, solved on vec(T).
  const Matrix eye = Matrix::Identity(d, d);
  Matrix sys = Matrix::Zero(d * d * m.g() + d * l, d * d);
  Vector rhs = Vector::Zero(sys.rows());
  for (int j = 0; j < m.g(); ++j) {
    sys.middleRows(d * d * j, d * d) = kron(m.A[j].transpose(), eye) - kron(eye, m.A[j].transpose());
  }
  sys.bottomRows(d * l) = kron(m.C.transpose(), eye);
  rhs.tail(d * l) = Eigen::Map<const Vector>(m.B.data(), d * l);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(sys);
  Vector t_vec = cod.solve(rhs);
  const double residual = (sys * t_vec - rhs).norm();
  if (residual > 1e-8 * std::max(1.0, rhs.norm())) {
    throw SymmetrizationFailed("no state-space similarity to the transpose");
  }
  const Matrix t = symmetrized(Eigen::Map<const Matrix>(t_vec.data(), d, d));
  if (!is_invertible(t)) throw SymmetrizationFailed("similarity to the transpose is singular");

  // T = E Ĵ Eᵀ; then A'_j = Ĵ E⁻¹(T A_j)E⁻ᵀ Ĵ and C' = EᵀC.
  Eigen::SelfAdjointEigenSolver<Matrix> es(t);
  const Vector& lambda = es.eigenvalues();
  Matrix e = es.eigenvectors() * lambda.cwiseAbs().cwiseSqrt().asDiagonal();
  Matrix e_inv = lambda.cwiseAbs().cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  Matrix signature = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) signature(i, i) = lambda(i) > 0.0 ? 1.0 : -1.0;
  std::vector<Matrix> a2;
  for (const auto& aj : m.A) {
    a2.push_back(signature * e_inv * symmetrized(t * aj) * e_inv.transpose() * signature);
  }
  Realization out = make_symmetric(signature, std::move(a2), e.transpose() * m.C, symmetrized(m.D));
  if (sampled_difference(out, r) > 1e-8) throw SymmetrizationFailed("symmetric form does not reproduce r");
  return out;
}

}  // namespace ncrat
