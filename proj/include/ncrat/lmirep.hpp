#ifndef NCRAT_LMIREP_HPP
#define NCRAT_LMIREP_HPP

#include "ncrat/linalg.hpp"
#include "ncrat/matrix_tuple.hpp"
#include "ncrat/realization.hpp"
#include "ncrat/singular.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ncrat::lmirep {

/// r(X) ≻ 0 means smallest eigenvalue above this.
inline constexpr double kPositiveTol = 1e-10;

/// Smallest eigenvalue of I − L_A(X); X lies in the LMI domain iff it is > 0.
double lmi_membership(const std::vector<Matrix>& A, const MatrixTuple& x);

struct PositivityVerdict {
  bool in_invertibility_set = false;
  double min_eig = 0.0;
  bool in_positivity_set = false;
  bool hidden_singularity_used = false;
};

/// Membership of X in the positivity set of r. Off the invertibility set the
/// value comes from a converged limit probe. Requires a Symmetric realization
/// with r(0) ≻ 0 unless `relaxed` is set (then the r(0) check is skipped).
/// Throws PreconditionViolation or ProbeDiverged.
PositivityVerdict positivity_report(const Realization& r, const MatrixTuple& x, bool relaxed = false);

/// Random symmetric tuples whose norm ‖X‖ is log-uniform in
/// [min_radius, max_radius], over the listed sizes.
struct TupleSampler {
  std::vector<int> sizes{1, 2, 3};
  int count = 100;  // per size
  double min_radius = 0.05;
  double max_radius = 2.0;
  std::uint64_t seed = 0;

  std::vector<MatrixTuple> draw(int g) const;
};

struct BoundednessResult {
  bool bounded = true;
  std::optional<MatrixTuple> witness;
  int evidence = 0;  // positivity-set members examined
  /// No members were sampled, so "bounded" carries no information.
  bool inconclusive = false;
  double largest_radius = 0.0;  // max λ_max(Σ X_j²) over members
};

/// Violated (bounded = false) when a sampled member has λ_max(Σ X_j²) > R_bound.
BoundednessResult boundedness_audit(const Realization& r, const TupleSampler& sampler, double r_bound);

/// blockdiag(J, J̃) − L_{A⊕Ã}.
Pencil direct_sum_pencil(const Realization& r, const Realization& rtilde);

struct BoundaryFlags {
  bool r_singular = false;
  bool rtilde_singular = false;
  bool ok() const noexcept { return r_singular || rtilde_singular; }
};

/// True when x is on the numerical boundary of the positivity set: r(x) has
/// an eigenvalue within 1e-4 of 0, or the pencil of r is (nearly) singular
/// at x.
bool on_boundary(const Realization& r, const MatrixTuple& x);

/// A pencil counts as singular at χ when its margin is below threshold or a
/// crossing of the ray t ↦ tχ lies within 1e-5 of t = 1.
bool singular_for_audit(const Pencil& p, const MatrixTuple& chi);

/// Throws PreconditionViolation for points not on the boundary.
std::vector<BoundaryFlags> boundary_audit(const Realization& r, const Realization& rtilde,
                                          const std::vector<MatrixTuple>& points);

/// Bisection along t ↦ tX (t ∈ [0, t_max]) for the first exit from the
/// positivity set, to within 1e-6 in t. Empty when tX stays inside.
std::optional<MatrixTuple> locate_boundary(const Realization& r, const MatrixTuple& x, double t_max);

struct ComponentCheck {
  bool agree = true;
  int count = 0;
  int inconclusive = 0;
  int members = 0;
  std::optional<MatrixTuple> witness;
};

/// For each sample compares membership in the positivity set of r with
/// membership in the component of 0 of the invertibility set of the direct
/// sum pencil (straight path, then a few seeded two-segment paths).
ComponentCheck pr_equals_component_check(const Realization& r, const Realization& rtilde,
                                         const TupleSampler& sampler, int random_paths = 2);

struct ConvexityResult {
  bool convex = true;  // NoCounterexample
  std::optional<MatrixTuple> X;
  std::optional<MatrixTuple> Y;
  int pairs_tested = 0;
};

/// Pairs of same-size members, midpoint tested. Membership is relaxed (no
/// r(0) ≻ 0 requirement) so that sets avoiding 0 can be examined.
ConvexityResult convexity_falsifier(const Realization& r, const TupleSampler& sampler, int pairs);

}  // namespace ncrat::lmirep

#endif  // NCRAT_LMIREP_HPP
