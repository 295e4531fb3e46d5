#ifndef NCRAT_REALIZATION_HPP
#define NCRAT_REALIZATION_HPP

#include "ncrat/expression.hpp"
#include "ncrat/linalg.hpp"
#include "ncrat/matrix_tuple.hpp"
#include "ncrat/polynomial.hpp"

#include <cstdint>
#include <vector>

namespace ncrat {

/// Affine pencil J0 − L_A(x), evaluated as J0⊗I_n − Σ A_j⊗X_j.
struct Pencil {
  Matrix J0;
  std::vector<Matrix> A;

  int d() const noexcept { return static_cast<int>(J0.rows()); }
  int g() const noexcept { return static_cast<int>(A.size()); }
  Matrix evaluate(const MatrixTuple& x) const;
};

/// Smallest singular value of the pencil at X.
double invertibility_margin(const Pencil& p, const MatrixTuple& x);

/// r(x) = D + Bᵀ(J − L_A(x))⁻¹C.
///
/// The Symmetric variant has B = C, J symmetric with J² = I and every A_j
/// symmetric. General realizations may be rectangular (B is d×rows, C is
/// d×cols), which is what the realization algebra for products needs.
struct DescriptorRealization {
  enum class Variant { General, Symmetric };

  Variant variant = Variant::General;
  Matrix J;
  std::vector<Matrix> A;
  Matrix B;
  Matrix C;
  Matrix D;

  int g() const noexcept { return static_cast<int>(A.size()); }
  int d() const noexcept { return static_cast<int>(J.rows()); }
  int rows() const noexcept { return static_cast<int>(D.rows()); }
  int cols() const noexcept { return static_cast<int>(D.cols()); }
  bool symmetric() const noexcept { return variant == Variant::Symmetric; }

  Pencil pencil() const { return Pencil{J, A}; }
  /// r(0) = D + BᵀJ⁻¹C.
  Matrix value_at_zero() const;
};

using Realization = DescriptorRealization;

/// Checks shapes and, for the Symmetric variant, J = Jᵀ, J² = I (1e-12),
/// A_j = A_jᵀ and B = C. Throws ShapeMismatch or InvalidArgument.
void validate(const Realization& r);

Realization make_symmetric(Matrix J, std::vector<Matrix> A, Matrix C, Matrix D);
Realization make_general(Matrix J, std::vector<Matrix> A, Matrix B, Matrix C, Matrix D);
/// d = 0 realization of the constant D.
Realization constant_realization(const Matrix& D, int g);

/// Throws PencilSingular when J⊗I − L_A(X) is not invertible.
Matrix eval_realization(const Realization& r, const MatrixTuple& x);

/// Coefficient of ∅ is D + BᵀJ⁻¹C; of w = x_{i1}···x_{ik} it is
/// Bᵀ(J⁻¹A_{i1})···(J⁻¹A_{ik})J⁻¹C.
CoefficientMap series_coefficients(const Realization& r, int max_degree);

// Realization algebra. Results are General (except transpose and scale,
// which keep the variant when it still applies).
Realization polynomial_realization(const FreePolynomial& p);
Realization sum_realization(const Realization& a, const Realization& b);
Realization product_realization(const Realization& a, const Realization& b);
Realization scale_realization(double c, const Realization& r);
/// Realizes r(X)ᵀ for symmetric X.
Realization transpose_realization(const Realization& r);
/// Realizes r⁻¹ by the block linearization [[J, −C], [Bᵀ, D]], without a
/// Woodbury step and without minimizing. Requires r(0) invertible.
Realization linearized_inverse(const Realization& r);

struct RealizeOptions {
  /// Minimize intermediate and final results and normalize the state basis.
  bool minimize = true;
};

/// General realization of e. With minimization on, the result is monic
/// (J = I), diagonally balanced so that each state's outgoing data (its rows
/// of the A_j and C) and incoming data (its columns of the A_j, row of B)
/// have equal norms, and the first nonzero entry of each row of C is positive.
Realization realize(const RationalExpr& e, RealizeOptions options = {});

struct MinimalityReport {
  bool is_minimal = true;
  int reach_rank = 0;
  int obs_rank = 0;
};

MinimalityReport minimality_check(const Realization& r);

/// Restricts to the reachable subspace and then quotients out the
/// unobservable one. General results are monic; Symmetric results stay
/// symmetric, with J a signature matrix.
Realization minimize(const Realization& r);

/// Realization of r⁻¹, minimized. Uses the Woodbury form when D is
/// invertible and the block linearization otherwise. Throws
/// ValueAtZeroSingular when r(0) is singular.
Realization invert_realization(const Realization& r);

/// Symmetric realization equivalent to a General one whose function is
/// symmetric. Already-symmetric input is returned unchanged.
/// Throws NotSymmetricFunction or SymmetrizationFailed.
Realization symmetrize(const Realization& r);

/// Evaluation-level comparison of two realizations on seeded samples with
/// Σ X_j² ≺ εI, sizes 1..3. Returns the largest relative difference
/// max ‖a−b‖/max(1,‖a‖) over samples where both pencils are invertible.
double sampled_difference(const Realization& a, const Realization& b, double epsilon = 0.05,
                          int count = 10, std::uint64_t seed = 0);

}  // namespace ncrat

#endif  // NCRAT_REALIZATION_HPP
