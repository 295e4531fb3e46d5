#include "ncrat/lmirep.hpp"

#include "ncrat/errors.hpp"

#include <cmath>
#include <map>
#include <random>

namespace ncrat::lmirep {

namespace {

Matrix random_symmetric(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c <= r; ++c) m(r, c) = m(c, r) = normal(rng);
  }
  return m;
}

bool is_member(const Realization& r, const MatrixTuple& x, bool relaxed) {
  try {
    return positivity_report(r, x, relaxed).in_positivity_set;
  } catch (const ProbeDiverged&) {
    return false;
  } catch (const AllDirectionsBlocked&) {
    return false;
  }
}

}  // namespace

double lmi_membership(const std::vector<Matrix>& A, const MatrixTuple& x) {
  const Eigen::Index m = A.empty() ? 0 : A.front().rows();
  const Matrix pencil = Matrix::Identity(m * x.n(), m * x.n()) - linear_pencil_part(A, x);
  return min_eigenvalue(pencil);
}

PositivityVerdict positivity_report(const Realization& r, const MatrixTuple& x, bool relaxed) {
  if (!r.symmetric()) throw PreconditionViolation("positivity_report needs a symmetric realization");
  if (!relaxed && !(min_eigenvalue(r.value_at_zero()) > kPositiveTol)) {
    throw PreconditionViolation("r(0) is not positive definite");
  }
  PositivityVerdict v;
  if (r.d() == 0 || is_invertible(r.pencil().evaluate(x))) {
    v.in_invertibility_set = true;
    v.min_eig = min_eigenvalue(eval_realization(r, x));
  } else {
    const auto reports = singular::limit_probe(r, x, singular::default_directions(x, 2, 0));
    const singular::LimitReport* hit = nullptr;
    for (const auto& rep : reports) {
      if (rep.converged) {
        hit = &rep;
        break;
      }
    }
    if (!hit) throw ProbeDiverged();
    v.hidden_singularity_used = true;
    v.min_eig = min_eigenvalue(*hit->limit_value);
  }
  v.in_positivity_set = v.min_eig > kPositiveTol;
  return v;
}

std::vector<MatrixTuple> TupleSampler::draw(int g) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = std::log(min_radius);
  const double hi = std::log(max_radius);
  std::vector<MatrixTuple> out;
  for (int n : sizes) {
    for (int i = 0; i < count; ++i) {
      std::vector<Matrix> entries;
      for (int j = 0; j < g; ++j) entries.push_back(random_symmetric(rng, n));
      MatrixTuple x(std::move(entries));
      const double radius = std::exp(lo + (hi - lo) * unit(rng));
      const double norm = std::sqrt(x.sum_of_squares_norm());
      out.push_back(norm > 0.0 ? x.scaled(radius / norm) : x);
    }
  }
  return out;
}

BoundednessResult boundedness_audit(const Realization& r, const TupleSampler& sampler, double r_bound) {
  BoundednessResult res;
  for (const auto& x : sampler.draw(r.g())) {
    if (!is_member(r, x, false)) continue;
    ++res.evidence;
    const double radius = x.sum_of_squares_norm();
    res.largest_radius = std::max(res.largest_radius, radius);
    if (radius > r_bound && res.bounded) {
      res.bounded = false;
      res.witness = x;
    }
  }
  res.inconclusive = res.evidence == 0;
  return res;
}

Pencil direct_sum_pencil(const Realization& r, const Realization& rtilde) {
  if (r.g() != rtilde.g()) throw ShapeMismatch("realizations have different variable counts");
  Pencil p;
  p.J0 = block_diag(r.J, rtilde.J);
  for (int j = 0; j < r.g(); ++j) p.A.push_back(block_diag(r.A[j], rtilde.A[j]));
  return p;
}

bool singular_for_audit(const Pencil& p, const MatrixTuple& chi) {
  if (p.d() == 0) return false;
  if (singular::is_singular_at(p, chi)) return true;
  for (double t : singular::ray_crossings(p, chi)) {
    if (std::abs(t - 1.0) <= 1e-5) return true;
  }
  return false;
}

bool on_boundary(const Realization& r, const MatrixTuple& x) {
  if (singular_for_audit(r.pencil(), x)) return true;
  return std::abs(min_eigenvalue(eval_realization(r, x))) <= 1e-4;
}

std::vector<BoundaryFlags> boundary_audit(const Realization& r, const Realization& rtilde,
                                          const std::vector<MatrixTuple>& points) {
  std::vector<BoundaryFlags> out;
  for (const auto& chi : points) {
    if (!on_boundary(r, chi)) throw PreconditionViolation("point is not on the boundary of the positivity set");
    BoundaryFlags f;
    f.r_singular = singular_for_audit(r.pencil(), chi);
    f.rtilde_singular = singular_for_audit(rtilde.pencil(), chi);
    out.push_back(f);
  }
  return out;
}

std::optional<MatrixTuple> locate_boundary(const Realization& r, const MatrixTuple& x, double t_max) {
  auto member = [&](double t) { return is_member(r, x.scaled(t), false); };
  if (member(t_max)) return std::nullopt;
  double lo = 0.0;
  double hi = t_max;
  // Walk out in small steps first so the bracket holds the first exit.
  const int steps = 64;
  for (int i = 1; i <= steps; ++i) {
    const double t = t_max * i / steps;
    if (!member(t)) {
      hi = t;
      break;
    }
    lo = t;
  }
  while (hi - lo > 1e-6 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (member(mid) ? lo : hi) = mid;
  }
  return x.scaled(0.5 * (lo + hi));
}

ComponentCheck pr_equals_component_check(const Realization& r, const Realization& rtilde,
                                         const TupleSampler& sampler, int random_paths) {
  ComponentCheck res;
  const Pencil p = direct_sum_pencil(r, rtilde);
  std::mt19937_64 rng(sampler.seed ^ 0x9e3779b97f4a7c15ULL);
  for (const auto& x : sampler.draw(r.g())) {
    ++res.count;
    const bool member = is_member(r, x, false);
    if (member) ++res.members;
    auto verdict = singular::line_segment_certificate(p, x, 0).verdict;
    for (int k = 0; k < random_paths && verdict != singular::SegmentVerdict::InComponentOfZero; ++k) {
      // Midpoint pushed off the straight line by a random symmetric offset.
      std::vector<Matrix> offset;
      for (int j = 0; j < x.g(); ++j) offset.push_back(random_symmetric(rng, x.n()));
      MatrixTuple e(std::move(offset));
      const MatrixTuple y = x.scaled(0.5) + e.scaled(0.25 * x.norm() / std::max(1e-300, e.norm()));
      const auto v = singular::two_segment_certificate(p, y, x, 0).verdict;
      if (v == singular::SegmentVerdict::InComponentOfZero || verdict == singular::SegmentVerdict::Inconclusive) {
        verdict = v;
      }
    }
    if (verdict == singular::SegmentVerdict::Inconclusive) {
      ++res.inconclusive;
      continue;
    }
    const bool in_component = verdict == singular::SegmentVerdict::InComponentOfZero;
    if (member != in_component && res.agree) {
      res.agree = false;
      res.witness = x;
    }
  }
  return res;
}

ConvexityResult convexity_falsifier(const Realization& r, const TupleSampler& sampler, int pairs) {
  ConvexityResult res;
  std::map<int, std::vector<MatrixTuple>> members;
  for (const auto& x : sampler.draw(r.g())) {
    if (is_member(r, x, true)) members[x.n()].push_back(x);
  }
  for (auto& [n, list] : members) {
    for (std::size_t i = 0; i + 1 < list.size() && res.pairs_tested < pairs; ++i) {
      for (std::size_t j = i + 1; j < list.size() && res.pairs_tested < pairs; j += list.size() / 4 + 1) {
        ++res.pairs_tested;
        const MatrixTuple mid = (list[i] + list[j]).scaled(0.5);
        if (!is_member(r, mid, true)) {
          res.convex = false;
          res.X = list[i];
          res.Y = list[j];
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace ncrat::lmirep
