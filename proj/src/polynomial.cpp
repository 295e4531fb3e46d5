#include "ncrat/polynomial.hpp"

#include "ncrat/errors.hpp"

namespace ncrat {

FreePolynomial::FreePolynomial(int rows, int cols, int g) : rows_(rows), cols_(cols), g_(g) {
  if (rows < 0 || cols < 0 || g < 1) throw InvalidArgument("bad polynomial shape");
}

FreePolynomial FreePolynomial::constant(const Matrix& value, int g) {
  FreePolynomial p(static_cast<int>(value.rows()), static_cast<int>(value.cols()), g);
  p.add_term(Word(), value);
  return p;
}

FreePolynomial FreePolynomial::monomial(const Word& w, const Matrix& coefficient, int g) {
  FreePolynomial p(static_cast<int>(coefficient.rows()), static_cast<int>(coefficient.cols()), g);
  p.add_term(w, coefficient);
  return p;
}

FreePolynomial FreePolynomial::variable(int letter, int g) {
  return monomial(Word{letter}, Matrix::Ones(1, 1), g);
}

Matrix FreePolynomial::coefficient(const Word& w) const {
  auto it = coeffs_.find(w);
  if (it == coeffs_.end()) return Matrix::Zero(rows_, cols_);
  return it->second;
}

int FreePolynomial::degree() const {
  if (coeffs_.empty()) return -1;
  return static_cast<int>(coeffs_.rbegin()->first.size());
}

void FreePolynomial::add_term(const Word& w, const Matrix& coefficient) {
  if (coefficient.rows() != rows_ || coefficient.cols() != cols_) {
    throw ShapeMismatch("coefficient shape does not match the polynomial");
  }
  if (!w.valid_for(g_)) throw InvalidArgument("word uses a variable outside 1..g");
  auto [it, inserted] = coeffs_.try_emplace(w, coefficient);
  if (!inserted) it->second += coefficient;
  if ((it->second.array() == 0.0).all()) coeffs_.erase(it);
}

FreePolynomial FreePolynomial::operator+(const FreePolynomial& rhs) const {
  if (rhs.rows_ != rows_ || rhs.cols_ != cols_) throw ShapeMismatch("cannot add polynomials of different shape");
  FreePolynomial out = *this;
  for (const auto& [w, c] : rhs.coeffs_) out.add_term(w, c);
  return out;
}

FreePolynomial FreePolynomial::operator*(const FreePolynomial& rhs) const {
  if (cols_ != rhs.rows_) throw ShapeMismatch("inner dimensions differ in polynomial product");
  FreePolynomial out(rows_, rhs.cols_, g_);
  for (const auto& [u, a] : coeffs_) {
    for (const auto& [v, b] : rhs.coeffs_) out.add_term(u + v, a * b);
  }
  return out;
}

FreePolynomial FreePolynomial::scaled(double c) const {
  FreePolynomial out(rows_, cols_, g_);
  for (const auto& [w, m] : coeffs_) out.add_term(w, c * m);
  return out;
}

FreePolynomial FreePolynomial::transposed() const {
  FreePolynomial out(cols_, rows_, g_);
  for (const auto& [w, m] : coeffs_) out.add_term(w.transposed(), m.transpose());
  return out;
}

FreePolynomial FreePolynomial::lifted(int k) const {
  FreePolynomial out(rows_ * k, cols_ * k, g_);
  const Matrix eye = Matrix::Identity(k, k);
  for (const auto& [w, m] : coeffs_) out.add_term(w, kron(m, eye));
  return out;
}

Matrix FreePolynomial::evaluate(const MatrixTuple& x) const {
  if (x.g() != g_) throw ShapeMismatch("tuple arity does not match the polynomial");
  const int n = x.n();
  Matrix out = Matrix::Zero(rows_ * n, cols_ * n);
  // Words arrive in (length, lex) order, so each prefix power is cached first.
  std::map<Word, Matrix> powers;
  powers.emplace(Word(), Matrix::Identity(n, n));
  for (const auto& [w, c] : coeffs_) {
    for (std::size_t len = 1; len <= w.size(); ++len) {
      Word prefix = w.head(len);
      if (powers.count(prefix)) continue;
      powers.emplace(prefix, powers.at(w.head(len - 1)) * x[w[len - 1]]);
    }
    out += kron(c, powers.at(w));
  }
  return out;
}

bool FreePolynomial::operator==(const FreePolynomial& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || g_ != rhs.g_) return false;
  if (coeffs_.size() != rhs.coeffs_.size()) return false;
  auto it = rhs.coeffs_.begin();
  for (const auto& [w, m] : coeffs_) {
    if (!(w == it->first) || m != it->second) return false;
    ++it;
  }
  return true;
}

}  // namespace ncrat
