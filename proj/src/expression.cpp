#include "ncrat/expression.hpp"

#include "format.hpp"
#include "ncrat/errors.hpp"

#include <cmath>
#include <optional>

namespace ncrat {

struct RationalExpr::Node {
  Kind kind;
  int rows;
  int cols;
  int g;
  Matrix value0;
  std::optional<FreePolynomial> poly;
  std::vector<RationalExpr> children;
  double scalar = 1.0;
};

namespace {

bool multi_term_text(const RationalExpr& e) {
  switch (e.kind()) {
    case RationalExpr::Kind::Sum:
    case RationalExpr::Kind::ScalarMul:
      return true;
    case RationalExpr::Kind::Poly: {
      const auto& c = e.polynomial().coefficients();
      if (c.size() > 1) return true;
      if (c.size() == 1 && e.rows() == 1 && e.cols() == 1 && c.begin()->second(0, 0) < 0.0) return true;
      return false;
    }
    default:
      return false;
  }
}

std::string poly_to_string(const FreePolynomial& p) {
  const bool scalar = p.rows() == 1 && p.cols() == 1;
  if (p.is_zero()) return scalar ? "0" : detail::format_matrix(Matrix::Zero(p.rows(), p.cols()));
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.coefficients()) {
    if (scalar) {
      const double v = c(0, 0);
      const double a = std::abs(v);
      if (first) {
        if (v < 0.0) out += "-";
      } else {
        out += v < 0.0 ? " - " : " + ";
      }
      if (w.empty()) {
        out += detail::format_number(a);
      } else if (a == 1.0) {
        out += w.to_string();
      } else {
        out += detail::format_number(a) + "*" + w.to_string();
      }
    } else {
      if (!first) out += " + ";
      out += detail::format_matrix(c);
      if (!w.empty()) out += "*" + w.to_string();
    }
    first = false;
  }
  return out;
}

}  // namespace

RationalExpr RationalExpr::poly(FreePolynomial p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Poly;
  n->rows = p.rows();
  n->cols = p.cols();
  n->g = p.g();
  n->value0 = p.value_at_zero();
  n->poly = std::move(p);
  return RationalExpr(std::move(n));
}

RationalExpr RationalExpr::constant(const Matrix& value, int g) {
  return poly(FreePolynomial::constant(value, g));
}

RationalExpr RationalExpr::variable(int letter, int g) {
  if (letter < 0 || letter >= g) throw InvalidArgument("variable index outside 1..g");
  return poly(FreePolynomial::variable(letter, g));
}

RationalExpr RationalExpr::sum(std::vector<RationalExpr> terms) {
  if (terms.empty()) throw InvalidArgument("empty sum");
  const int rows = terms.front().rows();
  const int cols = terms.front().cols();
  const int g = terms.front().g();
  std::vector<RationalExpr> flat;
  std::optional<FreePolynomial> poly_part;
  for (auto& t : terms) {
    if (t.rows() != rows || t.cols() != cols) throw ShapeMismatch("sum terms have different shapes");
    if (t.g() != g) throw ShapeMismatch("sum terms have different variable counts");
    std::vector<RationalExpr> pieces;
    if (t.kind() == Kind::Sum) {
      pieces.assign(t.children().begin(), t.children().end());
    } else {
      pieces.push_back(t);
    }
    for (auto& piece : pieces) {
      if (piece.kind() == Kind::Poly) {
        poly_part = poly_part ? *poly_part + piece.polynomial() : piece.polynomial();
      } else {
        flat.push_back(piece);
      }
    }
  }
  if (poly_part && (!poly_part->is_zero() || flat.empty())) flat.insert(flat.begin(), poly(*poly_part));
  if (flat.size() == 1) return flat.front();

  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->rows = rows;
  n->cols = cols;
  n->g = g;
  n->value0 = Matrix::Zero(rows, cols);
  for (const auto& t : flat) n->value0 += t.value_at_zero();
  n->children = std::move(flat);
  return RationalExpr(std::move(n));
}

RationalExpr RationalExpr::product(std::vector<RationalExpr> factors) {
  if (factors.empty()) throw InvalidArgument("empty product");
  const int g = factors.front().g();
  std::vector<RationalExpr> flat;
  for (auto& f : factors) {
    if (f.g() != g) throw ShapeMismatch("product factors have different variable counts");
    std::vector<RationalExpr> pieces;
    if (f.kind() == Kind::Product) {
      pieces.assign(f.children().begin(), f.children().end());
    } else {
      pieces.push_back(f);
    }
    for (auto& piece : pieces) {
      if (!flat.empty() && flat.back().cols() != piece.rows()) {
        throw ShapeMismatch("inner dimensions differ in product (" + std::to_string(flat.back().cols()) +
                            " vs " + std::to_string(piece.rows()) + ")");
      }
      if (!flat.empty() && flat.back().kind() == Kind::Poly && piece.kind() == Kind::Poly) {
        flat.back() = poly(flat.back().polynomial() * piece.polynomial());
      } else {
        flat.push_back(piece);
      }
    }
  }
  if (flat.size() == 1) return flat.front();

  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->rows = flat.front().rows();
  n->cols = flat.back().cols();
  n->g = g;
  n->value0 = flat.front().value_at_zero();
  for (std::size_t i = 1; i < flat.size(); ++i) n->value0 = n->value0 * flat[i].value_at_zero();
  n->children = std::move(flat);
  return RationalExpr(std::move(n));
}

RationalExpr RationalExpr::inverse(RationalExpr child) {
  if (child.rows() != child.cols()) throw ShapeMismatch("inverse of a non-square expression");
  if (!is_invertible(child.value_at_zero())) {
    throw NotAnalyticAtZero("inverse argument " + child.to_string() + " is singular at 0");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inverse;
  n->rows = child.rows();
  n->cols = child.cols();
  n->g = child.g();
  n->value0 = child.value_at_zero().inverse();
  n->children.push_back(std::move(child));
  return RationalExpr(std::move(n));
}

RationalExpr RationalExpr::transpose(RationalExpr child) {
  // Pushed down to the leaves, so transposing twice gives back the same tree.
  if (child.kind() == Kind::Transpose) return child.children().front();
  return transpose_expr(child);
}

RationalExpr RationalExpr::scalar_mul(double c, RationalExpr child) {
  if (child.kind() == Kind::Poly) return poly(child.polynomial().scaled(c));
  if (child.kind() == Kind::ScalarMul) {
    return scalar_mul(c * child.scalar(), child.children().front());
  }
  if (c == 1.0) return child;
  auto n = std::make_shared<Node>();
  n->kind = Kind::ScalarMul;
  n->rows = child.rows();
  n->cols = child.cols();
  n->g = child.g();
  n->value0 = c * child.value_at_zero();
  n->scalar = c;
  n->children.push_back(std::move(child));
  return RationalExpr(std::move(n));
}

RationalExpr::Kind RationalExpr::kind() const noexcept { return node_->kind; }
int RationalExpr::rows() const noexcept { return node_->rows; }
int RationalExpr::cols() const noexcept { return node_->cols; }
int RationalExpr::g() const noexcept { return node_->g; }
const Matrix& RationalExpr::value_at_zero() const noexcept { return node_->value0; }

const FreePolynomial& RationalExpr::polynomial() const {
  if (!node_->poly) throw InvalidArgument("not a polynomial node");
  return *node_->poly;
}

std::span<const RationalExpr> RationalExpr::children() const noexcept { return node_->children; }

double RationalExpr::scalar() const {
  if (node_->kind != Kind::ScalarMul) throw InvalidArgument("not a scalar multiple node");
  return node_->scalar;
}

int RationalExpr::node_count() const {
  int count = 1;
  for (const auto& c : node_->children) count += c.node_count();
  return count;
}

std::string RationalExpr::to_string() const {
  switch (kind()) {
    case Kind::Poly:
      return poly_to_string(polynomial());
    case Kind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : children()) {
        std::string s = t.to_string();
        if (first) {
          out = s;
        } else if (!s.empty() && s.front() == '-') {
          out += " - " + s.substr(1);
        } else {
          out += " + " + s;
        }
        first = false;
      }
      return out;
    }
    case Kind::Product: {
      std::string out;
      for (std::size_t i = 0; i < children().size(); ++i) {
        const auto& f = children()[i];
        if (i) out += "*";
        out += multi_term_text(f) ? "(" + f.to_string() + ")" : f.to_string();
      }
      return out;
    }
    case Kind::Inverse:
      return "inv(" + children().front().to_string() + ")";
    case Kind::Transpose:
      return "T(" + children().front().to_string() + ")";
    case Kind::ScalarMul: {
      const auto& c = children().front();
      return detail::format_number(scalar()) + "*" +
             (multi_term_text(c) ? "(" + c.to_string() + ")" : c.to_string());
    }
  }
  return {};
}

RationalExpr transpose_expr(const RationalExpr& e) {
  using Kind = RationalExpr::Kind;
  switch (e.kind()) {
    case Kind::Poly:
      return RationalExpr::poly(e.polynomial().transposed());
    case Kind::Sum: {
      std::vector<RationalExpr> terms;
      for (const auto& t : e.children()) terms.push_back(transpose_expr(t));
      return RationalExpr::sum(std::move(terms));
    }
    case Kind::Product: {
      std::vector<RationalExpr> factors;
      for (auto it = e.children().rbegin(); it != e.children().rend(); ++it) {
        factors.push_back(transpose_expr(*it));
      }
      return RationalExpr::product(std::move(factors));
    }
    case Kind::Inverse:
      return RationalExpr::inverse(transpose_expr(e.children().front()));
    case Kind::Transpose:
      // T(T(c)) = c; the child is stored with the transpose still pending.
      return e.children().front();
    case Kind::ScalarMul:
      return RationalExpr::scalar_mul(e.scalar(), transpose_expr(e.children().front()));
  }
  return e;
}

RationalExpr lift(const RationalExpr& e, int k) {
  using Kind = RationalExpr::Kind;
  if (k == 1) return e;
  switch (e.kind()) {
    case Kind::Poly:
      return RationalExpr::poly(e.polynomial().lifted(k));
    case Kind::Sum: {
      std::vector<RationalExpr> terms;
      for (const auto& t : e.children()) terms.push_back(lift(t, k));
      return RationalExpr::sum(std::move(terms));
    }
    case Kind::Product: {
      std::vector<RationalExpr> factors;
      for (const auto& f : e.children()) factors.push_back(lift(f, k));
      return RationalExpr::product(std::move(factors));
    }
    case Kind::Inverse:
      return RationalExpr::inverse(lift(e.children().front(), k));
    case Kind::Transpose:
      return RationalExpr::transpose(lift(e.children().front(), k));
    case Kind::ScalarMul:
      return RationalExpr::scalar_mul(e.scalar(), lift(e.children().front(), k));
  }
  return e;
}

namespace {

Matrix eval_node(const RationalExpr& e, const MatrixTuple& x, int& next_id) {
  using Kind = RationalExpr::Kind;
  const int id = next_id++;
  switch (e.kind()) {
    case Kind::Poly:
      return e.polynomial().evaluate(x);
    case Kind::Sum: {
      Matrix acc = eval_node(e.children().front(), x, next_id);
      for (std::size_t i = 1; i < e.children().size(); ++i) acc += eval_node(e.children()[i], x, next_id);
      return acc;
    }
    case Kind::Product: {
      Matrix acc = eval_node(e.children().front(), x, next_id);
      for (std::size_t i = 1; i < e.children().size(); ++i) acc = acc * eval_node(e.children()[i], x, next_id);
      return acc;
    }
    case Kind::Inverse: {
      Matrix arg = eval_node(e.children().front(), x, next_id);
      if (!is_invertible(arg)) throw OutsideFormalDomain(id, smallest_singular_value(arg));
      return arg.partialPivLu().inverse();
    }
    case Kind::Transpose:
      return eval_node(e.children().front(), x, next_id).transpose();
    case Kind::ScalarMul:
      return e.scalar() * eval_node(e.children().front(), x, next_id);
  }
  return {};
}

}  // namespace

Matrix eval_expr(const RationalExpr& e, const MatrixTuple& x) {
  if (x.g() != e.g()) throw ShapeMismatch("tuple arity does not match the expression");
  int next_id = 0;
  return eval_node(e, x, next_id);
}

bool structurally_equal(const RationalExpr& a, const RationalExpr& b) {
  if (a.kind() != b.kind() || a.rows() != b.rows() || a.cols() != b.cols() || a.g() != b.g()) return false;
  if (a.kind() == RationalExpr::Kind::Poly) return a.polynomial() == b.polynomial();
  if (a.kind() == RationalExpr::Kind::ScalarMul && a.scalar() != b.scalar()) return false;
  if (a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!structurally_equal(a.children()[i], b.children()[i])) return false;
  }
  return true;
}

}  // namespace ncrat
