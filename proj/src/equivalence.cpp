#include "ncrat/equivalence.hpp"

#include "ncrat/errors.hpp"
#include "ncrat/series.hpp"

#include <cmath>
#include <random>

namespace ncrat {

std::vector<MatrixTuple> sample_tuples(const SamplingBox& box, int g) {
  if (box.epsilon <= 0.0) throw InvalidArgument("sampling epsilon must be positive");
  std::mt19937_64 rng(box.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> fraction(0.05, 0.95);
  std::vector<MatrixTuple> out;
  for (int n : box.sizes) {
    if (n < 1) throw InvalidArgument("sample sizes must be positive");
    for (int s = 0; s < box.count; ++s) {
      std::vector<Matrix> entries;
      for (int j = 0; j < g; ++j) {
        Matrix m(n, n);
        for (int r = 0; r < n; ++r) {
          for (int c = 0; c <= r; ++c) m(r, c) = m(c, r) = normal(rng);
        }
        entries.push_back(m);
      }
      MatrixTuple x(entries);
      const double radius2 = x.sum_of_squares_norm();
      const double target = fraction(rng) * box.epsilon;
      out.push_back(radius2 > 0.0 ? x.scaled(std::sqrt(target / radius2)) : x);
    }
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equivalent:
      return "Equivalent";
    case Verdict::Distinguished:
      return "Distinguished";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "";
}

EquivalenceResult equivalence_test(const RationalExpr& e1, const RationalExpr& e2,
                                   const SamplingBox& box, double tol) {
  if (e1.rows() != e2.rows() || e1.cols() != e2.cols() || e1.g() != e2.g()) {
    throw ShapeMismatch("expressions have different shapes");
  }
  EquivalenceResult result;
  for (const auto& x : sample_tuples(box, e1.g())) {
    Matrix v1;
    Matrix v2;
    try {
      v1 = eval_expr(e1, x);
      v2 = eval_expr(e2, x);
    } catch (const OutsideFormalDomain&) {
      continue;
    }
    ++result.samples_used;
    const double diff = (v1 - v2).norm();
    result.max_difference = std::max(result.max_difference, diff);
    if (diff > tol) {
      result.verdict = Verdict::Distinguished;
      result.witness = x;
      return result;
    }
  }
  if (result.samples_used == 0) return result;
  result.series_mismatch = first_series_mismatch(series_coefficients(e1, box.series_degree),
                                                 series_coefficients(e2, box.series_degree), 1e-10);
  result.verdict = result.series_mismatch ? Verdict::Inconclusive : Verdict::Equivalent;
  return result;
}

}  // namespace ncrat
