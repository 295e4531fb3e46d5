#ifndef NCRAT_SINGULAR_HPP
#define NCRAT_SINGULAR_HPP

#include "ncrat/fock.hpp"
#include "ncrat/linalg.hpp"
#include "ncrat/matrix_tuple.hpp"
#include "ncrat/realization.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ncrat::singular {

/// A pencil is singular at X when its margin is at most this fraction of
/// max(‖J0⊗I − L_A(X)‖, ‖J0‖).
inline constexpr double kSingularRelTol = 1e-8;

bool is_singular_at(const Pencil& p, const MatrixTuple& x);

// ---------------------------------------------------------------------------
// Straight-line certificates

enum class SegmentVerdict { InComponentOfZero, PathBlocked, Inconclusive };

struct SegmentCertificate {
  SegmentVerdict verdict = SegmentVerdict::Inconclusive;
  /// First blocking t in [0, 1] (PathBlocked only).
  double t_star = 0.0;
  /// Smallest margin seen on the sample grid.
  double min_margin = 0.0;
};

/// Follows t ↦ tX for t ∈ [0, 1]. Crossings are located exactly from the
/// real eigenvalues λ ≥ 1 of (J0⊗I)⁻¹L_A(X) (t* = 1/λ) and confirmed by the
/// margin; the grid of `samples` points supplies min_margin.
SegmentCertificate line_segment_certificate(const Pencil& p, const MatrixTuple& x, int samples = 64);

/// Certificate for the two-segment path 0 → Y → X.
SegmentCertificate two_segment_certificate(const Pencil& p, const MatrixTuple& y, const MatrixTuple& x,
                                           int samples = 64);

const char* to_string(SegmentVerdict v);

/// All t > 0 where J0⊗I − tL_A(X) is singular (reciprocals of the real
/// positive eigenvalues of (J0⊗I)⁻¹L_A(X)), ascending.
std::vector<double> ray_crossings(const Pencil& p, const MatrixTuple& x);

// ---------------------------------------------------------------------------
// Limit probes

struct LimitReport {
  bool converged = false;
  std::optional<Matrix> limit_value;
  double growth_exponent_estimate = 0.0;
  std::vector<double> schedule;
  /// t values where the pencil was singular.
  std::vector<double> skipped;
  std::string direction_tag;
  /// ‖r‖ at each usable t.
  std::vector<double> norms;
};

/// t_k = 2^{-k}, k = 3..20.
std::vector<double> default_schedule();

struct Direction {
  std::string tag;
  MatrixTuple E;
};

/// E = χ followed by `random_count` seeded random symmetric unit directions.
std::vector<Direction> default_directions(const MatrixTuple& chi, int random_count, std::uint64_t seed);

/// Evaluates r along a curve t ↦ X(t) over the schedule. Convergence is
/// judged on the Richardson values 2r(t_{k+1}) − r(t_k) (the schedule halves
/// t): the last three must be pairwise within 1e-7·(1 + ‖value‖). The growth
/// exponent is the slope of log‖r‖ against log t over the last usable points.
LimitReport probe_curve(const Realization& r, const std::function<MatrixTuple(double)>& curve,
                        const std::vector<double>& schedule, const std::string& tag);

/// One report per direction, along χ + tE. Throws PreconditionViolation when
/// χ is not a singular point of the pencil, AllDirectionsBlocked when no
/// direction yields three usable points.
std::vector<LimitReport> limit_probe(const Realization& r, const MatrixTuple& chi,
                                     const std::vector<Direction>& directions,
                                     const std::vector<double>& schedule = default_schedule());

// ---------------------------------------------------------------------------
// Kernel decomposition and order/residue

struct KernelSplit {
  Matrix V;  // dN×k, orthonormal basis of the kernel of J⊗I − L_A(χ)
  Matrix U;  // dN×(dN−k), orthonormal complement
  Matrix alpha;
  Matrix beta;
  Matrix Rblock;
  Matrix R1;
  Matrix pencil_at_chi;
  Matrix L_chi;  // L_A(χ)

  int k() const noexcept { return static_cast<int>(V.cols()); }
  /// [V U] · [[0, 0], [0, Rblock]] · [V U]ᵀ, which equals the pencil at χ.
  Matrix reassemble() const;
};

/// Requires a symmetric pencil (J and every A_j symmetric) and symmetric χ.
/// Throws NotSingular when the margin at χ is above threshold.
KernelSplit kernel_split(const Realization& r, const MatrixTuple& chi);

/// F(t) = α − t²βᵀ(R + t²R₁)⁻¹β.
Matrix F_of_t(const KernelSplit& ks, double t);

struct SingularityResidue {
  int p = 0;
  int q = 1;
  Matrix M;
  double fit_error = 0.0;
};

/// p is twice the pole order in u = t² of F⁻¹, found as the first κ for which
/// the block Toeplitz system of the Taylor coefficients of F has a solution
/// with right side e_κ⊗I; M is the leading block of that solution. fit_error
/// is the smallest relative gap ‖t^pF(t)⁻¹ − M‖/‖M‖ over the schedule.
/// Throws DegenerateDeterminant when F(t) is singular for every t, FitUnstable
/// when fit_error exceeds 1e-3.
SingularityResidue order_and_residue(const KernelSplit& ks);
SingularityResidue order_and_residue(const Realization& r, const MatrixTuple& chi);

// ---------------------------------------------------------------------------
// Perturbed points and the closed-form limit

struct PerturbationFrame {
  std::vector<Matrix> H;  // g matrices, M×N
  std::vector<Matrix> K;  // g symmetric matrices, M×M
  double s = 0.1;
  double rho = 0.0;

  int m() const noexcept { return H.empty() ? 0 : static_cast<int>(H.front().rows()); }
};

/// X̃_j = [[χ_j + t²χ_j, s t^q H_jᵀ], [s t^q H_j, ρK_j]].
MatrixTuple perturbed_point(const MatrixTuple& chi, const PerturbationFrame& frame, double t, int q);

struct Lemma43Result {
  Matrix lhs;
  Matrix rhs;
  double gap = 0.0;
  Matrix gamma;  // −L_A(H)V
  Matrix W;      // −L_A(H)U
  Matrix Y;      // J⊗I − ρL_A(K)
  Matrix G0;     // γᵀY⁻¹γ
  Matrix eta;    // (I − s²MG₀)⁻¹M
  SingularityResidue residue;
  std::vector<double> schedule;
};

/// lhs is the t → 0 limit of t²[0 I]Γ⁻¹ζF_*⁻¹ζᵀΓ⁻¹[0; I], extrapolated in
/// u = t²; rhs = s²Y⁻¹γη(s)γᵀY⁻¹. Throws YSingular or ScheduleBlocked.
Lemma43Result lemma43_check(const Realization& r, const MatrixTuple& chi, const PerturbationFrame& frame);

/// (P(X̃)⁻¹)_MM − Y⁻¹ by inverting the whole pencil at X̃(s, t).
Matrix lemma43_direct(const Realization& r, const MatrixTuple& chi, const PerturbationFrame& frame, double t,
                      int q);

/// η(s) = (I − s²MG₀)⁻¹M.
Matrix eta_of_s(const Matrix& M, const Matrix& G0, double s);

/// Polynomial extrapolation of η(s) to s = 0 from s = s0·2^{-k}, k = 0..4.
Matrix extrapolate_eta(const Matrix& M, const Matrix& G0, double s0);

/// (C⊗I_M)ᵀY⁻¹γMγᵀY⁻¹(C⊗I_M): the part of the limit of r along X̃ that the
/// residue contributes.
Matrix obstruction(const Realization& r, const Lemma43Result& l43);

// ---------------------------------------------------------------------------
// Well-hidden refutation

struct RefuteOptions {
  bool require_minimal = true;
  int nu_cap = 2;
  std::vector<double> rhos{0.0, 0.1, 0.3};
  double s = 0.1;
  int random_directions = 2;
  std::uint64_t seed = 0;
  double obstruction_tol = 1e-7;
};

struct Certificate {
  MatrixTuple K;
  double rho = 0.0;
  double obstruction_norm = 0.0;
  LimitReport report;
};

struct RefuteResult {
  std::optional<Certificate> certificate;  // empty: NoCertificateFound
  int candidates_tried = 0;
};

/// Looks for a padding χ ⊕ ρK at which r is not hidden. If the probe at χ
/// itself diverges the certificate is ρ = 0. Otherwise K ranges over
/// K(ν₁) ⊕ K(ν₂), ν₁ ≤ ν₂ ≤ nu_cap, with Fock-structured and seeded random
/// H, and a certificate is a nonzero obstruction.
/// Throws NotMinimal (when required) and PreconditionViolation.
RefuteResult well_hidden_refute(const Realization& r, const MatrixTuple& chi, const RefuteOptions& options = {});

}  // namespace ncrat::singular

#endif  // NCRAT_SINGULAR_HPP
