#ifndef NCRAT_LINALG_HPP
#define NCRAT_LINALG_HPP

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace ncrat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

/// Relative threshold used for all invertibility decisions: a matrix is
/// invertible when its smallest singular value exceeds this fraction of the
/// largest one.
inline constexpr double kInvertibilityRelTol = 1e-12;

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Block diagonal assembly diag(a, b). Either block may be 0×0.
Matrix block_diag(const Matrix& a, const Matrix& b);

/// Symmetric part (m + mᵀ)/2. The result is bitwise symmetric.
Matrix symmetrized(const Matrix& m);

Vector singular_values(const Matrix& m);
double smallest_singular_value(const Matrix& m);

/// σ_min > kInvertibilityRelTol·σ_max. Empty matrices count as invertible.
bool is_invertible(const Matrix& m);

/// Smallest eigenvalue of the symmetric part of m.
double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);

/// Orthonormal basis (columns) for the range of m; rank decided by singular
/// values above rel_tol·σ_max.
Matrix orthonormal_range(const Matrix& m, double rel_tol);

/// Orthonormal basis for the null space; columns are the right singular
/// vectors whose singular value is at most abs_tol.
Matrix null_space(const Matrix& m, double abs_tol);

/// Numerical rank with threshold rel_tol·σ_max.
int numerical_rank(const Matrix& m, double rel_tol);

/// Flip each column so that its largest-magnitude entry is positive.
void normalize_column_signs(Matrix& m);

}  // namespace ncrat

#endif  // NCRAT_LINALG_HPP
