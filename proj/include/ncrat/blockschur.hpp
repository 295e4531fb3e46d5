#ifndef NCRAT_BLOCKSCHUR_HPP
#define NCRAT_BLOCKSCHUR_HPP

#include "ncrat/linalg.hpp"

namespace ncrat::blockschur {

/// M = [[Φ, Ωᵀ], [Ω, Ψ]] with Φ p×p, Ω q×p, Ψ q×q.
struct BlockMatrix {
  Matrix Phi;
  Matrix Omega;
  Matrix Psi;

  int p() const noexcept { return static_cast<int>(Phi.rows()); }
  int q() const noexcept { return static_cast<int>(Psi.rows()); }
  Matrix assemble() const;
  /// Splits a square matrix after its first p rows and columns. The upper
  /// right block is taken as Ωᵀ; M need not be symmetric, but then
  /// assemble() only reproduces it when that block equals Ωᵀ.
  static BlockMatrix split(const Matrix& m, int p);
};

enum class Pivot { Psi, Phi };

/// Φ − ΩᵀΨ⁻¹Ω (pivot Ψ) or Ψ − ΩΦ⁻¹Ωᵀ (pivot Φ). Throws PivotSingular.
Matrix schur_complement(const BlockMatrix& b, Pivot pivot);

/// M⁻¹ from the three-factor product
///   pivot Ψ: [[I, 0], [−Ψ⁻¹Ω, I]] · diag(𝒮⁻¹, Ψ⁻¹) · [[I, −ΩᵀΨ⁻¹], [0, I]]
///   pivot Φ: [[I, −Φ⁻¹Ωᵀ], [0, I]] · diag(Φ⁻¹, 𝒮_*⁻¹) · [[I, 0], [−ΩΦ⁻¹, I]]
/// Throws PivotSingular or SchurSingular.
Matrix block_inverse(const BlockMatrix& b, Pivot pivot);

/// (ζ, −Ψ⁻¹Ωζ), a kernel vector of M when 𝒮ζ = 0. Throws PivotSingular, or
/// NotInKernel when ‖𝒮ζ‖ > 1e-10·max(1, ‖ζ‖).
Vector kernel_from_schur(const BlockMatrix& b, const Vector& zeta);

}  // namespace ncrat::blockschur

#endif  // NCRAT_BLOCKSCHUR_HPP
