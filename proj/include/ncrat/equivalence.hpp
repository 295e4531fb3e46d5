#ifndef NCRAT_EQUIVALENCE_HPP
#define NCRAT_EQUIVALENCE_HPP

#include "ncrat/expression.hpp"
#include "ncrat/matrix_tuple.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ncrat {

/// Random symmetric tuples in the free ε-neighbourhood Σ X_j² ≺ ε I.
struct SamplingBox {
  double epsilon = 0.1;
  std::vector<int> sizes{1, 2, 3, 4};
  int count = 25;  // per size
  std::uint64_t seed = 0;
  int series_degree = 5;
};

/// Gaussian symmetric tuples, each rescaled so that λ_max(Σ X_j²) is a
/// uniform fraction in [0.05, 0.95] of ε. Deterministic in the seed.
std::vector<MatrixTuple> sample_tuples(const SamplingBox& box, int g);

enum class Verdict { Equivalent, Distinguished, Inconclusive };

struct EquivalenceResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<MatrixTuple> witness;
  double max_difference = 0.0;
  int samples_used = 0;
  /// First word where the series disagree, if any.
  std::optional<Word> series_mismatch;
};

const char* to_string(Verdict v);

/// Equivalent only if every sample inside both formal domains agrees within
/// tol (Frobenius norm) and the series agree up to box.series_degree.
/// Distinguished carries a witness in both domains. Inconclusive when no
/// sample lies in both domains or the series differ without a witness.
EquivalenceResult equivalence_test(const RationalExpr& e1, const RationalExpr& e2,
                                   const SamplingBox& box, double tol);

}  // namespace ncrat

#endif  // NCRAT_EQUIVALENCE_HPP
