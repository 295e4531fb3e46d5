#ifndef NCRAT_EXPRESSION_HPP
#define NCRAT_EXPRESSION_HPP

#include "ncrat/linalg.hpp"
#include "ncrat/matrix_tuple.hpp"
#include "ncrat/polynomial.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ncrat {

/// A free rational expression analytic at 0, stored as an immutable tree.
///
/// Construction validates shapes and, for inverse nodes, that the argument is
/// invertible at the origin, so every expression that exists has a well
/// defined value at 0. Sums and products flatten nested nodes of the same
/// kind and fold polynomial operands together; a sum or product of
/// polynomials is itself a polynomial node.
class RationalExpr {
 public:
  enum class Kind { Poly, Sum, Product, Inverse, Transpose, ScalarMul };

  static RationalExpr poly(FreePolynomial p);
  static RationalExpr constant(const Matrix& value, int g);
  static RationalExpr variable(int letter, int g);
  static RationalExpr sum(std::vector<RationalExpr> terms);
  static RationalExpr product(std::vector<RationalExpr> factors);
  /// Throws NotAnalyticAtZero if the child is singular (or non-square) at 0.
  static RationalExpr inverse(RationalExpr child);
  static RationalExpr transpose(RationalExpr child);
  static RationalExpr scalar_mul(double c, RationalExpr child);

  Kind kind() const noexcept;
  int rows() const noexcept;
  int cols() const noexcept;
  int g() const noexcept;

  /// The value r(0) (for a 1×1 point).
  const Matrix& value_at_zero() const noexcept;

  /// Poly nodes only.
  const FreePolynomial& polynomial() const;
  std::span<const RationalExpr> children() const noexcept;
  /// ScalarMul nodes only.
  double scalar() const;

  /// Number of nodes in the tree (preorder ids run 0..node_count()-1).
  int node_count() const;

  /// Text in the parser grammar; reparsing gives an equivalent expression.
  std::string to_string() const;

 private:
  struct Node;
  explicit RationalExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Transpose pushed down to the leaves: polynomials become pᵀ, products are
/// reversed, and inverse/transpose nodes commute. Applying it twice gives back
/// a structurally equal tree.
RationalExpr transpose_expr(const RationalExpr& e);

/// e ⊗ I_k: every coefficient P_w becomes P_w ⊗ I_k.
RationalExpr lift(const RationalExpr& e, int k);

/// Evaluates with coefficient ⊗ matrix lifting. Throws OutsideFormalDomain
/// (with the preorder id of the failing inverse node) when an inverse node's
/// argument is singular at x.
Matrix eval_expr(const RationalExpr& e, const MatrixTuple& x);

bool structurally_equal(const RationalExpr& a, const RationalExpr& b);

}  // namespace ncrat

#endif  // NCRAT_EXPRESSION_HPP
