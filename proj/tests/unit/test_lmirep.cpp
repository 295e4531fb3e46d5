#include "ncrat/errors.hpp"
#include "ncrat/lmirep.hpp"
#include "ncrat/parser.hpp"

#include "../corpus.hpp"
#include "../support.hpp"

#include <gtest/gtest.h>

using namespace ncrat;
using namespace ncrat::lmirep;
using namespace ncrat::testing;

namespace {

MatrixTuple scalars(std::initializer_list<double> v) { return MatrixTuple::scalars(std::vector<double>(v)); }

Realization sym(const std::string& text, int g) { return symmetrize(realize(parse_expression(text, g))); }

// d = 0 symmetric constant.
Realization sym_constant(double v, int g) {
  return make_symmetric(Matrix(0, 0), std::vector<Matrix>(static_cast<std::size_t>(g), Matrix(0, 0)), Matrix(0, 1),
                        scalar(v));
}

bool well_invertible(const Matrix& p) { return p.size() == 0 || smallest_singular_value(p) >= 1e-6; }

double min_eig_oracle(const Matrix& m) { return Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues().minCoeff(); }

TupleSampler sampler(std::vector<int> sizes, int count, std::uint64_t seed, double max_radius = 2.0) {
  TupleSampler s;
  s.sizes = std::move(sizes);
  s.count = count;
  s.seed = seed;
  s.max_radius = max_radius;
  return s;
}

}  // namespace

// ---------------------------------------------------------------- membership

TEST(Lmi, Examples) {
  EXPECT_NEAR(lmi_membership({scalar(0.5)}, scalars({1.0})), 0.5, 1e-15);
  EXPECT_NEAR(lmi_membership({scalar(0.5)}, MatrixTuple::zeros(1, 3)), 1.0, 1e-15);
  EXPECT_NEAR(lmi_membership({scalar(0.5)}, scalars({2.0})), 0.0, 1e-15);
}

TEST(Lmi, MatchesEigenvalueOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<Matrix> A{random_symmetric(rng, 2), random_symmetric(rng, 2)};
    const MatrixTuple x({random_symmetric(rng, 3), random_symmetric(rng, 3)});
    const Matrix p = I(6) - kron_oracle(A[0], x[0]) - kron_oracle(A[1], x[1]);
    EXPECT_NEAR(lmi_membership(A, x), min_eig_oracle(p), 1e-12);
  }
}

// ---------------------------------------------------------------- positivity

TEST(Positivity, Examples) {
  const auto at0 = positivity_report(R1(), scalars({0.0}));
  EXPECT_NEAR(at0.min_eig, 2.0, 1e-14);
  EXPECT_TRUE(at0.in_positivity_set);
  const auto at2 = positivity_report(R1(), scalars({2.0}));
  EXPECT_NEAR(at2.min_eig, 1.5, 1e-14);
  EXPECT_TRUE(at2.in_positivity_set);
  EXPECT_TRUE(at2.in_invertibility_set);
  const auto lin = positivity_report(one_minus_x(), scalars({2.0}));
  EXPECT_NEAR(lin.min_eig, -1.0, 1e-14);
  EXPECT_FALSE(lin.in_positivity_set);
}

TEST(Positivity, HiddenSingularityUsesTheLimit) {
  const auto v = positivity_report(R2(), scalars({1.0}));
  EXPECT_FALSE(v.in_invertibility_set);
  EXPECT_TRUE(v.hidden_singularity_used);
  EXPECT_NEAR(v.min_eig, 1.0, 1e-8);
  EXPECT_TRUE(v.in_positivity_set);
}

TEST(Positivity, Errors) {
  EXPECT_THROW(positivity_report(one_minus_x_inverse(), scalars({1.0})), ProbeDiverged);
  EXPECT_THROW(positivity_report(sym_constant(-1.0, 1), scalars({0.0})), PreconditionViolation);
  const auto general = make_general(I(1), {I(1)}, scalar(2.0), I(1), scalar(1.0));
  EXPECT_THROW(positivity_report(general, scalars({0.0})), PreconditionViolation);
  EXPECT_NO_THROW(positivity_report(sym_constant(-1.0, 1), scalars({0.0}), true));
}

TEST(Positivity, AgreesWithDenseOracleAndVerdictInvariant) {
  std::mt19937_64 rng(2);
  const auto r = sym("inv([1 - x1, -x2; -x2, 1 + x1])", 2);
  for (int trial = 0; trial < 60; ++trial) {
    const MatrixTuple x({1.5 * random_symmetric(rng, 2), 1.5 * random_symmetric(rng, 2)});
    if (!is_invertible(pencil_oracle(r.J, r.A, x.entries()))) continue;
    const auto v = positivity_report(r, x);
    EXPECT_NEAR(v.min_eig, min_eig_oracle(realization_oracle(r, x.entries())), 1e-8);
    if (v.in_positivity_set) {
      EXPECT_TRUE(v.in_invertibility_set || v.hidden_singularity_used);
      EXPECT_GT(v.min_eig, 0.0);
    }
  }
}

TEST(Positivity, InverseHasTheSamePositivitySet) {
  for (const auto& c : corpus()) {
    if (!c.symmetric_function) continue;
    const auto r = sym(c.text, 2);
    if (!(min_eig_oracle(r.value_at_zero()) > kPositiveTol)) continue;
    const auto rt = invert_realization(r);
    int compared = 0;
    for (const auto& x : sampler({1, 2}, 40, 3).draw(2)) {
      const Matrix p = pencil_oracle(r.J, r.A, x.entries());
      const Matrix pt = pencil_oracle(rt.J, rt.A, x.entries());
      if (!well_invertible(p) || !well_invertible(pt)) continue;
      const Matrix v = realization_oracle(r, x.entries());
      const Matrix vt = realization_oracle(rt, x.entries());
      if (std::abs(min_eig_oracle(v)) < 1e-6) continue;
      EXPECT_LE((vt * v - I(v.rows())).norm(), 1e-8 * std::max(1.0, vt.norm() * v.norm())) << c.text;
      EXPECT_EQ(positivity_report(r, x).in_positivity_set, positivity_report(rt, x).in_positivity_set) << c.text;
      ++compared;
    }
    EXPECT_GT(compared, 20) << c.text;
  }
}

TEST(Positivity, ScalingIntoTheSet) {
  const auto r = sym("1 - x1*x1 - x2*x2", 2);
  for (const auto& x : sampler({1, 2, 3}, 40, 4).draw(2)) {
    if (!positivity_report(r, x).in_positivity_set) continue;
    for (int k = 0; k <= 10; ++k) EXPECT_TRUE(positivity_report(r, x.scaled(k / 10.0)).in_positivity_set);
  }
}

// ---------------------------------------------------------------- sampler

TEST(Sampler, RadiiAndDeterminism) {
  const auto s = sampler({1, 2, 3}, 50, 5);
  const auto a = s.draw(2);
  const auto b = s.draw(2);
  ASSERT_EQ(a.size(), 150u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i][0], b[i][0]);
    EXPECT_TRUE(a[i].symmetric());
    const double radius = std::sqrt(a[i].sum_of_squares_norm());
    EXPECT_GE(radius, 0.05 - 1e-12);
    EXPECT_LE(radius, 2.0 + 1e-12);
  }
  EXPECT_EQ(a[0].n(), 1);
  EXPECT_EQ(a[149].n(), 3);
}

// ---------------------------------------------------------------- boundedness

TEST(Boundedness, BallLikeSetIsBounded) {
  const auto res = boundedness_audit(sym("1 - x1*x1", 1), sampler({1, 2, 3}, 334, 6), 1.0);
  EXPECT_TRUE(res.bounded);
  EXPECT_FALSE(res.inconclusive);
  EXPECT_GT(res.evidence, 100);
  EXPECT_LT(res.largest_radius, 1.0);
}

TEST(Boundedness, EverythingIsUnbounded) {
  const auto res = boundedness_audit(sym_constant(1.0, 2), sampler({1, 2}, 100, 7, 20.0), 10.0);
  ASSERT_FALSE(res.bounded);
  ASSERT_TRUE(res.witness.has_value());
  EXPECT_GT(res.witness->sum_of_squares_norm(), 10.0);
}

TEST(Boundedness, EmptyBudgetIsInconclusive) {
  const auto res = boundedness_audit(R1(), sampler({1}, 0, 8), 1.0);
  EXPECT_TRUE(res.bounded);
  EXPECT_TRUE(res.inconclusive);
  EXPECT_EQ(res.evidence, 0);
}

// ---------------------------------------------------------------- direct sum

TEST(DirectSum, EvaluationIsBlockDiagonal) {
  const auto r = R1();
  const auto rt = invert_realization(r);
  const auto p = direct_sum_pencil(r, rt);
  EXPECT_EQ(p.d(), 2 + rt.d());
  std::mt19937_64 rng(9);
  for (int n = 1; n <= 3; ++n) {
    const MatrixTuple x({random_symmetric(rng, n)});
    const Matrix want = block_diag(pencil_oracle(r.J, r.A, x.entries()), pencil_oracle(rt.J, rt.A, x.entries()));
    EXPECT_EQ(p.evaluate(x), want);
  }
  const double m0 = invertibility_margin(p, MatrixTuple::zeros(1, 2));
  EXPECT_NEAR(m0, std::min(invertibility_margin(r.pencil(), MatrixTuple::zeros(1, 2)),
                           invertibility_margin(rt.pencil(), MatrixTuple::zeros(1, 2))),
              1e-14);
}

TEST(DirectSum, ConstantContributesNothing) {
  const auto c = constant_realization(scalar(2.0), 1);
  const auto rt = one_minus_x_inverse();
  const auto p = direct_sum_pencil(c, rt);
  EXPECT_EQ(p.d(), 1);
  EXPECT_EQ(p.evaluate(scalars({0.3})), pencil_oracle(rt.J, rt.A, {scalar(0.3)}));
  EXPECT_THROW(direct_sum_pencil(R1(), constant_realization(scalar(1.0), 2)), ShapeMismatch);
}

// ---------------------------------------------------------------- boundary audit

TEST(BoundaryAudit, Examples) {
  const auto r = sym("1 - 0.5*x1", 1);
  const auto rt = invert_realization(r);
  const auto flags = boundary_audit(r, rt, {scalars({2.0})});
  ASSERT_EQ(flags.size(), 1u);
  EXPECT_TRUE(flags[0].rtilde_singular);
  EXPECT_TRUE(flags[0].ok());
  EXPECT_THROW(boundary_audit(r, rt, {scalars({0.0})}), PreconditionViolation);
  // With the roles swapped the boundary is a singularity of r's own pencil.
  const auto swapped = boundary_audit(rt, r, {scalars({2.0})});
  EXPECT_TRUE(swapped[0].r_singular);
}

TEST(BoundaryAudit, LocatedPointsPass) {
  const auto r = sym("1 - x1*x1 - x2*x2", 2);
  const auto rt = invert_realization(r);
  std::mt19937_64 rng(10);
  int located = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const MatrixTuple x({random_symmetric(rng, n), random_symmetric(rng, n)});
    const auto chi = locate_boundary(r, x, 10.0 / std::sqrt(x.sum_of_squares_norm()));
    ASSERT_TRUE(chi.has_value());
    // The set is λ_max(X1² + X2²) < 1.
    EXPECT_NEAR(chi->sum_of_squares_norm(), 1.0, 1e-5);
    EXPECT_TRUE(on_boundary(r, *chi));
    for (const auto& f : boundary_audit(r, rt, {*chi})) EXPECT_TRUE(f.ok());
    ++located;
  }
  EXPECT_EQ(located, 20);
  EXPECT_FALSE(locate_boundary(r, scalars({0.1, 0.1}), 1.0).has_value());
}

// ---------------------------------------------------------------- component check

TEST(Component, ScalarLmiAgrees) {
  const auto r = sym("1 - 0.5*x1", 1);
  const auto res = pr_equals_component_check(r, invert_realization(r), sampler({1, 2}, 500, 11, 5.0));
  EXPECT_TRUE(res.agree);
  EXPECT_EQ(res.count, 1000);
  EXPECT_EQ(res.inconclusive, 0);
  EXPECT_GT(res.members, 100);
  EXPECT_LT(res.members, 1000);
}

TEST(Component, ZeroIsInBoth) {
  const auto r = sym("1 - x1*x1 - x2*x2", 2);
  const auto rt = invert_realization(r);
  EXPECT_TRUE(positivity_report(r, MatrixTuple::zeros(2, 2)).in_positivity_set);
  EXPECT_EQ(singular::line_segment_certificate(direct_sum_pencil(r, rt), MatrixTuple::zeros(2, 2)).verdict,
            singular::SegmentVerdict::InComponentOfZero);
}

TEST(Component, CorruptedInverseDisagrees) {
  const auto r = sym("1 - 0.5*x1", 1);
  auto bad = invert_realization(r);
  for (auto& a : bad.A) a = -a;
  const auto res = pr_equals_component_check(r, bad, sampler({1, 2}, 200, 12, 5.0));
  ASSERT_FALSE(res.agree);
  ASSERT_TRUE(res.witness.has_value());
  const bool member = positivity_report(r, *res.witness).in_positivity_set;
  const bool in_component = singular::line_segment_certificate(direct_sum_pencil(r, bad), *res.witness).verdict ==
                            singular::SegmentVerdict::InComponentOfZero;
  EXPECT_NE(member, in_component);
}

// ---------------------------------------------------------------- convexity

TEST(Convexity, IntervalIsConvex) {
  const auto res = convexity_falsifier(sym("1 - x1*x1", 1), sampler({1, 2, 3}, 400, 13), 1000);
  EXPECT_TRUE(res.convex);
  EXPECT_EQ(res.pairs_tested, 1000);
}

TEST(Convexity, TwoRaysAreNotConvex) {
  const auto r = sym("x1*x1 - 1", 1);
  const auto res = convexity_falsifier(r, sampler({1}, 200, 14), 1000);
  ASSERT_FALSE(res.convex);
  const MatrixTuple mid = (*res.X + *res.Y).scaled(0.5);
  EXPECT_GT(std::abs((*res.X)[0](0, 0)), 1.0);
  EXPECT_GT(std::abs((*res.Y)[0](0, 0)), 1.0);
  EXPECT_LE(std::abs(mid[0](0, 0)), 1.0);
}

TEST(Convexity, SinglePointBudgetIsVacuous) {
  const auto res = convexity_falsifier(sym("1 - x1*x1", 1), sampler({1}, 1, 15), 10);
  EXPECT_TRUE(res.convex);
  EXPECT_EQ(res.pairs_tested, 0);
}
