#ifndef NCRAT_FOCK_HPP
#define NCRAT_FOCK_HPP

#include "ncrat/linalg.hpp"
#include "ncrat/matrix_tuple.hpp"
#include "ncrat/word.hpp"

#include <map>
#include <vector>

namespace ncrat::fock {

inline constexpr long long kDefaultDimensionCap = 100000;

/// Words of length ≤ ν in (length, lex) order; position i is basis vector e_i.
struct FockBasis {
  int g = 1;
  int nu = 0;
  std::vector<Word> words;
  std::map<Word, int> index;

  int size() const noexcept { return static_cast<int>(words.size()); }
};

/// S_j w = x_j w for |w| < ν (0 otherwise) and K_j = S_j + S_jᵀ.
struct ShiftTuple {
  std::vector<IntMatrix> S;
  std::vector<IntMatrix> K;

  int g() const noexcept { return static_cast<int>(K.size()); }
  int dim() const noexcept { return K.empty() ? 0 : static_cast<int>(K.front().rows()); }
  /// K as a symmetric floating-point tuple.
  MatrixTuple k_tuple() const;
};

struct FockSpace {
  FockBasis basis;
  ShiftTuple shifts;
};

/// Dimension Σ_{j≤ν} g^j, or -1 if it exceeds cap.
long long fock_dimension(int g, int nu, long long cap = kDefaultDimensionCap);

/// Throws DimensionOverflow when the dimension exceeds cap.
FockSpace build_fock(int g, int nu, long long cap = kDefaultDimensionCap);

/// K^w ∅ = K_{w_1}···K_{w_k} e_∅. Throws WordTooLong when |w| > ν.
IntVector k_word_vector(const FockSpace& f, const Word& w);

/// Qᵀ = ζ e_ωᵀ (N×𝔡): sends K^ω∅ to ζ and every other K^w∅, |w| ≤ ν, to 0.
/// Throws WordLengthMismatch unless |ω| = ν.
IntMatrix separating_map(const FockBasis& basis, const Word& omega, const IntVector& zeta);
Matrix separating_map(const FockBasis& basis, const Word& omega, const Vector& zeta);

/// diag(K_j(ν₁), K_j(ν₂)) and likewise for S.
ShiftTuple direct_sum(const ShiftTuple& a, const ShiftTuple& b);

}  // namespace ncrat::fock

#endif  // NCRAT_FOCK_HPP
