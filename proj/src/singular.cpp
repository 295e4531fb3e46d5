#include "ncrat/singular.hpp"

#include "ncrat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace ncrat::singular {

namespace {

double pencil_scale(const Pencil& p, const Vector& sv) {
  const double j_norm = p.d() == 0 ? 0.0 : singular_values(p.J0)(0);
  return std::max(sv.size() ? sv(0) : 0.0, j_norm);
}

// Value at h = 0 of the interpolating polynomial through (h_i, v_i).
Matrix extrapolate_to_zero(const std::vector<double>& h, std::vector<Matrix> v) {
  const std::size_t n = h.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const double hi = h[i];
      const double hj = h[i - level];
      v[i] = (hj * v[i] - hi * v[i - 1]) / (hj - hi);
    }
  }
  return v.back();
}

// First real crossing s ∈ [0, 1] of start − s·dir, or -1 when none.
struct Crossing {
  double s = -1.0;
  bool ambiguous = false;
};

Crossing first_crossing(const Matrix& start, const Matrix& dir) {
  Crossing c;
  if (start.rows() == 0) return c;
  Eigen::PartialPivLU<Matrix> lu(start);
  Eigen::EigenSolver<Matrix> es(lu.solve(dir), false);
  const double scale = std::max(1.0, singular_values(start)(0) + singular_values(dir)(0));
  double best = 2.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> lambda = es.eigenvalues()(i);
    if (lambda.real() < 1.0 - 1e-12) continue;
    if (std::abs(lambda.imag()) > 1e-6 * std::abs(lambda)) continue;
    best = std::min(best, 1.0 / lambda.real());
  }
  if (best > 1.0) return c;
  best = std::min(best, 1.0);
  const double margin = smallest_singular_value(start - best * dir);
  if (margin <= 1e-6 * scale) {
    c.s = best;
  } else {
    c.ambiguous = true;
  }
  return c;
}

double grid_min_margin(const Matrix& start, const Matrix& dir, int samples) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double s = samples == 0 ? 1.0 : static_cast<double>(i) / samples;
    best = std::min(best, smallest_singular_value(start - s * dir));
  }
  return best;
}

Matrix random_symmetric(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c <= r; ++c) m(r, c) = m(c, r) = normal(rng);
  }
  return m;
}

bool pencil_is_symmetric(const Realization& r) {
  const double tol = 1e-12 * std::max(1.0, r.J.norm());
  if ((r.J - r.J.transpose()).norm() > tol) return false;
  for (const auto& aj : r.A) {
    if ((aj - aj.transpose()).norm() > 1e-12 * std::max(1.0, aj.norm())) return false;
  }
  return true;
}

Matrix lifted(const Matrix& m, int n) { return kron(m, Matrix::Identity(n, n)); }

// Quantities of the perturbation that do not depend on t.
struct FrameData {
  KernelSplit ks;
  SingularityResidue residue;
  Matrix gamma;
  Matrix W;
  Matrix Y;
  Matrix Y_inv;
  Matrix G0;
  Matrix eta;
};

FrameData frame_data(const Realization& r, const MatrixTuple& chi, const PerturbationFrame& frame) {
  if (static_cast<int>(frame.H.size()) != r.g() || static_cast<int>(frame.K.size()) != r.g()) {
    throw ShapeMismatch("frame tuples must have g entries");
  }
  const int m = frame.m();
  for (int j = 0; j < r.g(); ++j) {
    if (frame.H[j].rows() != m || frame.H[j].cols() != chi.n()) throw ShapeMismatch("H_j must be M×N");
    if (frame.K[j].rows() != m || frame.K[j].cols() != m) throw ShapeMismatch("K_j must be M×M");
  }
  FrameData fd{kernel_split(r, chi), {}, {}, {}, {}, {}, {}, {}};
  fd.residue = order_and_residue(fd.ks);
  Matrix lh = Matrix::Zero(r.d() * m, r.d() * chi.n());
  Matrix lk = Matrix::Zero(r.d() * m, r.d() * m);
  for (int j = 0; j < r.g(); ++j) {
    lh += kron(r.A[j], frame.H[j]);
    lk += kron(r.A[j], frame.K[j]);
  }
  fd.gamma = -lh * fd.ks.V;
  fd.W = -lh * fd.ks.U;
  fd.Y = lifted(r.J, m) - frame.rho * lk;
  if (!is_invertible(fd.Y)) throw YSingular();
  fd.Y_inv = fd.Y.partialPivLu().inverse();
  fd.G0 = fd.gamma.transpose() * fd.Y_inv * fd.gamma;
  fd.eta = eta_of_s(fd.residue.M, fd.G0, frame.s);
  return fd;
}

}  // namespace

bool is_singular_at(const Pencil& p, const MatrixTuple& x) {
  if (p.d() == 0) return false;
  const Vector sv = singular_values(p.evaluate(x));
  return sv(sv.size() - 1) <= kSingularRelTol * pencil_scale(p, sv);
}

SegmentCertificate line_segment_certificate(const Pencil& p, const MatrixTuple& x, int samples) {
  SegmentCertificate cert;
  if (p.d() == 0) {
    cert.verdict = SegmentVerdict::InComponentOfZero;
    cert.min_margin = std::numeric_limits<double>::infinity();
    return cert;
  }
  const Matrix start = lifted(p.J0, x.n());
  if (!is_invertible(start)) return cert;
  const Matrix dir = linear_pencil_part(p.A, x);
  cert.min_margin = grid_min_margin(start, dir, samples);
  const Crossing c = first_crossing(start, dir);
  if (c.s >= 0.0) {
    cert.verdict = SegmentVerdict::PathBlocked;
    cert.t_star = c.s;
  } else if (!c.ambiguous) {
    cert.verdict = SegmentVerdict::InComponentOfZero;
  }
  return cert;
}

SegmentCertificate two_segment_certificate(const Pencil& p, const MatrixTuple& y, const MatrixTuple& x,
                                           int samples) {
  SegmentCertificate first = line_segment_certificate(p, y, samples);
  if (first.verdict != SegmentVerdict::InComponentOfZero || p.d() == 0) return first;
  SegmentCertificate cert;
  const Matrix start = p.evaluate(y);
  const Matrix dir = linear_pencil_part(p.A, x - y);
  cert.min_margin = std::min(first.min_margin, grid_min_margin(start, dir, samples));
  const Crossing c = first_crossing(start, dir);
  if (c.s >= 0.0) {
    cert.verdict = SegmentVerdict::PathBlocked;
    cert.t_star = c.s;
  } else if (!c.ambiguous) {
    cert.verdict = SegmentVerdict::InComponentOfZero;
  }
  return cert;
}

const char* to_string(SegmentVerdict v) {
  switch (v) {
    case SegmentVerdict::InComponentOfZero:
      return "InComponentOfZero";
    case SegmentVerdict::PathBlocked:
      return "PathBlocked";
    case SegmentVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "";
}

std::vector<double> ray_crossings(const Pencil& p, const MatrixTuple& x) {
  std::vector<double> out;
  if (p.d() == 0) return out;
  const Matrix start = lifted(p.J0, x.n());
  if (!is_invertible(start)) throw InvalidArgument("ray crossings need an invertible J0");
  Eigen::EigenSolver<Matrix> es(start.partialPivLu().solve(linear_pencil_part(p.A, x)), false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> lambda = es.eigenvalues()(i);
    if (lambda.real() <= 0.0 || std::abs(lambda.imag()) > 1e-6 * std::abs(lambda)) continue;
    out.push_back(1.0 / lambda.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> default_schedule() {
  std::vector<double> out;
  for (int k = 3; k <= 20; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

std::vector<Direction> default_directions(const MatrixTuple& chi, int random_count, std::uint64_t seed) {
  std::vector<Direction> out;
  out.push_back({"chi", chi});
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_count; ++i) {
    std::vector<Matrix> entries;
    for (int j = 0; j < chi.g(); ++j) entries.push_back(random_symmetric(rng, chi.n()));
    MatrixTuple e(std::move(entries));
    out.push_back({"random-" + std::to_string(i + 1), e.scaled(1.0 / e.norm())});
  }
  return out;
}

LimitReport probe_curve(const Realization& r, const std::function<MatrixTuple(double)>& curve,
                        const std::vector<double>& schedule, const std::string& tag) {
  LimitReport rep;
  rep.schedule = schedule;
  rep.direction_tag = tag;
  std::vector<double> ts;
  std::vector<Matrix> values;
  for (double t : schedule) {
    try {
      values.push_back(eval_realization(r, curve(t)));
      ts.push_back(t);
      rep.norms.push_back(values.back().norm());
    } catch (const PencilSingular&) {
      rep.skipped.push_back(t);
    }
  }
  // Linear extrapolation to t = 0 from consecutive usable points.
  std::vector<Matrix> extrapolated;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    extrapolated.push_back((ts[i] * values[i + 1] - ts[i + 1] * values[i]) / (ts[i] - ts[i + 1]));
  }
  if (extrapolated.size() >= 3) {
    const std::size_t n = extrapolated.size();
    const double tol = 1e-7 * (1.0 + extrapolated.back().norm());
    rep.converged = (extrapolated[n - 1] - extrapolated[n - 2]).norm() <= tol &&
                    (extrapolated[n - 1] - extrapolated[n - 3]).norm() <= tol &&
                    (extrapolated[n - 2] - extrapolated[n - 3]).norm() <= tol;
    if (rep.converged) rep.limit_value = extrapolated.back();
  }
  // Least-squares slope of log‖r‖ against log t on the last six points.
  const std::size_t first = values.size() > 6 ? values.size() - 6 : 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = first; i < values.size(); ++i) {
    const double lx = std::log(ts[i]);
    const double ly = std::log(std::max(rep.norms[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count >= 2) {
    const double denom = count * sxx - sx * sx;
    if (denom != 0.0) rep.growth_exponent_estimate = (count * sxy - sx * sy) / denom;
  }
  return rep;
}

std::vector<LimitReport> limit_probe(const Realization& r, const MatrixTuple& chi,
                                     const std::vector<Direction>& directions,
                                     const std::vector<double>& schedule) {
  if (!is_singular_at(r.pencil(), chi)) {
    throw PreconditionViolation("the pencil is invertible at chi; it is not a singular point");
  }
  std::vector<LimitReport> out;
  bool any_usable = false;
  for (const auto& dir : directions) {
    if (dir.E.g() != chi.g() || dir.E.n() != chi.n()) throw ShapeMismatch("direction shape differs from chi");
    out.push_back(probe_curve(
        r, [&](double t) { return chi + dir.E.scaled(t); }, schedule, dir.tag));
    if (out.back().norms.size() >= 3) any_usable = true;
  }
  if (!any_usable) throw AllDirectionsBlocked();
  return out;
}

Matrix KernelSplit::reassemble() const { return U * Rblock * U.transpose(); }

KernelSplit kernel_split(const Realization& r, const MatrixTuple& chi) {
  if (!pencil_is_symmetric(r)) throw InvalidArgument("kernel_split needs a symmetric pencil");
  if (!chi.symmetric()) throw InvalidArgument("kernel_split needs a symmetric point");
  KernelSplit ks;
  const Pencil p = r.pencil();
  ks.pencil_at_chi = symmetrized(p.evaluate(chi));
  ks.L_chi = symmetrized(linear_pencil_part(r.A, chi));
  const Vector sv = singular_values(ks.pencil_at_chi);
  const double scale = pencil_scale(p, sv);
  const double margin = sv.size() ? sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (sv.size() == 0 || margin > kSingularRelTol * scale) throw NotSingular(margin);
  ks.V = null_space(ks.pencil_at_chi, kSingularRelTol * scale);
  normalize_column_signs(ks.V);
  ks.U = null_space(ks.V.transpose(), 0.5);
  normalize_column_signs(ks.U);
  ks.alpha = symmetrized(-ks.V.transpose() * ks.L_chi * ks.V);
  ks.beta = -ks.U.transpose() * ks.L_chi * ks.V;
  ks.Rblock = symmetrized(ks.U.transpose() * ks.pencil_at_chi * ks.U);
  ks.R1 = symmetrized(-ks.U.transpose() * ks.L_chi * ks.U);
  return ks;
}

Matrix F_of_t(const KernelSplit& ks, double t) {
  if (ks.U.cols() == 0) return ks.alpha;
  const double u = t * t;
  return ks.alpha - u * ks.beta.transpose() * (ks.Rblock + u * ks.R1).partialPivLu().solve(ks.beta);
}

SingularityResidue order_and_residue(const KernelSplit& ks) {
  const int k = ks.k();
  const int dn = static_cast<int>(ks.pencil_at_chi.rows());

  // det F(t) ≡ 0 exactly when F(t) is singular at every sample t.
  bool all_singular = true;
  for (double t : {0.05, 0.13, 0.31, 0.47, 0.71, 0.89, 1.3}) {
    const Matrix f = F_of_t(ks, t);
    const Vector sv = singular_values(f);
    if (sv(sv.size() - 1) > 1e-12 * std::max(1.0, sv(0))) {
      all_singular = false;
      break;
    }
  }
  if (all_singular) throw DegenerateDeterminant();

  // Taylor coefficients of F in u = t²: F_0 = α,
  // F_{m+1} = (−1)^{m+1} βᵀ(R⁻¹R₁)^m R⁻¹β.
  const int kappa_max = dn + 1;
  std::vector<Matrix> coeff{ks.alpha};
  if (ks.U.cols() > 0) {
    Eigen::PartialPivLU<Matrix> r_lu(ks.Rblock);
    Matrix v = r_lu.solve(ks.beta);
    const Matrix r_inv_r1 = r_lu.solve(ks.R1);
    for (int m = 0; m < kappa_max; ++m) {
      coeff.push_back((m % 2 == 0 ? -1.0 : 1.0) * ks.beta.transpose() * v);
      v = r_inv_r1 * v;
    }
  } else {
    coeff.resize(static_cast<std::size_t>(kappa_max + 1), Matrix::Zero(k, k));
  }

  // Roundoff-sized coefficients (α from an isotropic kernel, say) must count
  // as zero or the first Toeplitz system is spuriously solvable.
  const double scale = std::max({1.0, ks.pencil_at_chi.norm(), ks.L_chi.norm()});
  for (auto& c : coeff) {
    if (c.norm() <= 1e-10 * scale) c.setZero();
  }

  SingularityResidue res;
  bool found = false;
  for (int kappa = 0; kappa <= kappa_max && !found; ++kappa) {
    const int size = (kappa + 1) * k;
    Matrix toeplitz = Matrix::Zero(size, size);
    for (int i = 0; i <= kappa; ++i) {
      for (int j = 0; j <= i; ++j) toeplitz.block(i * k, j * k, k, k) = coeff[static_cast<std::size_t>(i - j)];
    }
    Matrix rhs = Matrix::Zero(size, k);
    rhs.bottomRows(k).setIdentity();
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(toeplitz);
    cod.setThreshold(1e-10);
    const Matrix sol = cod.solve(rhs);
    const double residual = (toeplitz * sol - rhs).norm();
    if (residual <= 1e-8 * (1.0 + toeplitz.norm() * sol.norm())) {
      res.p = 2 * kappa;
      res.q = kappa + 1;
      res.M = sol.topRows(k);
      found = true;
    }
  }
  if (!found) throw DegenerateDeterminant();
  if (res.M.norm() <= 1e-10) throw FitUnstable("residue vanished");

  res.fit_error = std::numeric_limits<double>::infinity();
  for (double t : default_schedule()) {
    const Matrix f = F_of_t(ks, t);
    if (!is_invertible(f)) continue;
    const Matrix scaled = std::pow(t, res.p) * f.partialPivLu().inverse();
    res.fit_error = std::min(res.fit_error, (scaled - res.M).norm() / res.M.norm());
  }
  if (!(res.fit_error <= 1e-3)) {
    throw FitUnstable("t^p F(t)^-1 does not approach M (gap " + std::to_string(res.fit_error) + ")");
  }
  return res;
}

SingularityResidue order_and_residue(const Realization& r, const MatrixTuple& chi) {
  return order_and_residue(kernel_split(r, chi));
}

MatrixTuple perturbed_point(const MatrixTuple& chi, const PerturbationFrame& frame, double t, int q) {
  const int n = chi.n();
  const int m = frame.m();
  const double off = frame.s * std::pow(t, q);
  std::vector<Matrix> entries;
  for (int j = 0; j < chi.g(); ++j) {
    Matrix x(n + m, n + m);
    x << (1.0 + t * t) * chi[j], off * frame.H[j].transpose(), off * frame.H[j], frame.rho * frame.K[j];
    entries.push_back(std::move(x));
  }
  return MatrixTuple(std::move(entries));
}

Matrix eta_of_s(const Matrix& M, const Matrix& G0, double s) {
  const auto k = M.rows();
  return (Matrix::Identity(k, k) - s * s * M * G0).partialPivLu().solve(M);
}

Matrix extrapolate_eta(const Matrix& M, const Matrix& G0, double s0) {
  std::vector<double> h;
  std::vector<Matrix> v;
  for (int k = 0; k <= 4; ++k) {
    const double s = std::ldexp(s0, -k);
    h.push_back(s * s);
    v.push_back(eta_of_s(M, G0, s));
  }
  return extrapolate_to_zero(h, std::move(v));
}

Lemma43Result lemma43_check(const Realization& r, const MatrixTuple& chi, const PerturbationFrame& frame) {
  FrameData fd = frame_data(r, chi, frame);
  const KernelSplit& ks = fd.ks;
  const int q = fd.residue.q;
  const int k = ks.k();
  const auto nu = ks.U.cols();
  const auto dm = fd.Y.rows();
  const double s = frame.s;

  Lemma43Result out;
  out.gamma = fd.gamma;
  out.W = fd.W;
  out.Y = fd.Y;
  out.G0 = fd.G0;
  out.eta = fd.eta;
  out.residue = fd.residue;
  out.rhs = s * s * fd.Y_inv * fd.gamma * fd.eta * fd.gamma.transpose() * fd.Y_inv;

  std::vector<double> us;
  std::vector<Matrix> values;
  for (int i = 0; i < 6; ++i) {
    const double u = std::ldexp(1e-2, -i);
    const double t = std::sqrt(u);
    Matrix gamma_blk(nu + dm, nu + dm);
    gamma_blk << ks.Rblock + u * ks.R1, s * std::pow(t, q) * fd.W.transpose(), s * std::pow(t, q) * fd.W, fd.Y;
    if (!is_invertible(gamma_blk)) continue;
    Matrix zeta(nu + dm, k);
    zeta << ks.beta, s * std::pow(t, q - 2) * fd.gamma;
    Eigen::PartialPivLU<Matrix> lu(gamma_blk);
    const Matrix g_inv_zeta = lu.solve(zeta);
    const Matrix f_star = ks.alpha - u * zeta.transpose() * g_inv_zeta;
    if (!is_invertible(f_star)) continue;
    const Matrix lower = g_inv_zeta.bottomRows(dm);
    values.push_back(u * lower * f_star.partialPivLu().solve(lower.transpose()));
    us.push_back(u);
    out.schedule.push_back(t);
  }
  if (values.size() < 4) throw ScheduleBlocked();
  out.lhs = extrapolate_to_zero(us, std::move(values));
  const double scale = std::max(out.lhs.norm(), out.rhs.norm());
  out.gap = scale == 0.0 ? 0.0 : (out.lhs - out.rhs).norm() / scale;
  return out;
}

Matrix lemma43_direct(const Realization& r, const MatrixTuple& chi, const PerturbationFrame& frame, double t,
                      int q) {
  const int n = chi.n();
  const int m = frame.m();
  const int d = r.d();
  const Matrix p = r.pencil().evaluate(perturbed_point(chi, frame, t, q));
  const Matrix p_inv = p.partialPivLu().inverse();
  std::vector<Eigen::Index> idx;
  for (int i = 0; i < d; ++i) {
    for (int a = 0; a < m; ++a) idx.push_back(static_cast<Eigen::Index>(i) * (n + m) + n + a);
  }
  Matrix mm(d * m, d * m);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) mm(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = p_inv(idx[a], idx[b]);
  }
  Matrix lk = Matrix::Zero(d * m, d * m);
  for (int j = 0; j < r.g(); ++j) lk += kron(r.A[j], frame.K[j]);
  const Matrix y = lifted(r.J, m) - frame.rho * lk;
  return mm - y.partialPivLu().inverse();
}

Matrix obstruction(const Realization& r, const Lemma43Result& l43) {
  const auto m = l43.Y.rows() / std::max(1, r.d());
  const Matrix ci = lifted(r.C, static_cast<int>(m));
  const Matrix y_inv = l43.Y.partialPivLu().inverse();
  return ci.transpose() * y_inv * l43.gamma * l43.residue.M * l43.gamma.transpose() * y_inv * ci;
}

RefuteResult well_hidden_refute(const Realization& r, const MatrixTuple& chi, const RefuteOptions& options) {
  if (options.require_minimal && !minimality_check(r).is_minimal) throw NotMinimal();
  if (!is_singular_at(r.pencil(), chi)) {
    throw PreconditionViolation("the pencil is invertible at chi; it is not a singular point");
  }
  RefuteResult result;
  const auto schedule = default_schedule();

  // χ itself may not be hidden at all.
  std::vector<LimitReport> probes;
  try {
    probes = limit_probe(r, chi, default_directions(chi, options.random_directions, options.seed), schedule);
  } catch (const AllDirectionsBlocked&) {
  }
  for (const auto& rep : probes) {
    ++result.candidates_tried;
    if (!rep.converged && rep.norms.size() >= 3) {
      result.certificate = Certificate{MatrixTuple::zeros(chi.g(), 0), 0.0, 0.0, rep};
      return result;
    }
  }

  const KernelSplit ks = kernel_split(r, chi);
  const SingularityResidue residue = order_and_residue(ks);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = chi.n();
  const int g = chi.g();

  for (int nu1 = 0; nu1 <= options.nu_cap; ++nu1) {
    for (int nu2 = nu1; nu2 <= options.nu_cap; ++nu2) {
      const fock::FockSpace f1 = fock::build_fock(g, nu1);
      const fock::FockSpace f2 = fock::build_fock(g, nu2);
      const MatrixTuple k_tuple = fock::direct_sum(f1.shifts, f2.shifts).k_tuple();
      const int m = k_tuple.n();

      // Fock-structured H: Q maps ℝ^N onto the top word of the second summand.
      Vector zeta(n);
      for (int i = 0; i < n; ++i) zeta(i) = normal(rng);
      zeta.normalize();
      const Word omega(std::vector<int>(static_cast<std::size_t>(nu2), g - 1));
      Matrix q = Matrix::Zero(m, n);
      q.bottomRows(f2.basis.size()) = fock::separating_map(f2.basis, omega, zeta).transpose();
      std::vector<Matrix> structured;
      std::vector<Matrix> random;
      for (int j = 0; j < g; ++j) {
        structured.push_back(q * chi[j] + q);
        Matrix h(m, n);
        for (Eigen::Index a = 0; a < h.size(); ++a) h.data()[a] = normal(rng);
        random.push_back(h / std::max(1e-300, h.norm()));
      }

      for (const auto* hs : {&structured, &random}) {
        for (double rho : options.rhos) {
          PerturbationFrame frame{*hs, k_tuple.entries(), options.s, rho};
          ++result.candidates_tried;
          Lemma43Result l43;
          try {
            FrameData fd = frame_data(r, chi, frame);
            l43.gamma = fd.gamma;
            l43.Y = fd.Y;
            l43.residue = residue;
          } catch (const YSingular&) {
            continue;
          }
          const Matrix z = obstruction(r, l43);
          const double norm = z.norm();
          if (norm > options.obstruction_tol) {
            LimitReport rep = probe_curve(
                r, [&](double t) { return perturbed_point(chi, frame, t, residue.q); }, schedule,
                "padding nu=" + std::to_string(nu1) + "+" + std::to_string(nu2) + " rho=" + std::to_string(rho));
            result.certificate = Certificate{k_tuple, rho, norm, rep};
            return result;
          }
        }
      }
    }
  }
  return result;
}

}  // namespace ncrat::singular
