#include "ncrat/fock.hpp"

#include "ncrat/errors.hpp"

namespace ncrat::fock {

namespace {

template <typename M>
M block_diag_any(const M& a, const M& b) {
  M out = M::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

MatrixTuple ShiftTuple::k_tuple() const {
  std::vector<Matrix> entries;
  for (const auto& k : K) entries.push_back(k.cast<double>());
  return MatrixTuple(std::move(entries));
}

long long fock_dimension(int g, int nu, long long cap) {
  long long total = 0;
  long long level = 1;
  for (int j = 0; j <= nu; ++j) {
    total += level;
    if (total > cap) return -1;
    level *= g;
    if (level > cap) level = cap + 1;
  }
  return total;
}

FockSpace build_fock(int g, int nu, long long cap) {
  if (g < 1 || nu < 0) throw InvalidArgument("build_fock needs g ≥ 1 and ν ≥ 0");
  if (fock_dimension(g, nu, cap) < 0) {
    throw DimensionOverflow("Fock dimension for g=" + std::to_string(g) + ", nu=" + std::to_string(nu) +
                            " exceeds " + std::to_string(cap));
  }
  FockSpace f;
  f.basis.g = g;
  f.basis.nu = nu;
  f.basis.words = words_up_to(g, nu);
  for (int i = 0; i < f.basis.size(); ++i) f.basis.index.emplace(f.basis.words[static_cast<std::size_t>(i)], i);
  const int n = f.basis.size();
  for (int j = 0; j < g; ++j) {
    IntMatrix s = IntMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const Word& w = f.basis.words[static_cast<std::size_t>(i)];
      if (static_cast<int>(w.size()) < nu) s(f.basis.index.at(w.prepended(j)), i) = 1;
    }
    f.shifts.K.push_back(s + s.transpose());
    f.shifts.S.push_back(std::move(s));
  }
  return f;
}

IntVector k_word_vector(const FockSpace& f, const Word& w) {
  if (static_cast<int>(w.size()) > f.basis.nu) throw WordTooLong();
  if (!w.valid_for(f.basis.g)) throw InvalidArgument("word uses a variable outside 1..g");
  IntVector v = IntVector::Zero(f.basis.size());
  v(0) = 1;
  for (std::size_t i = w.size(); i-- > 0;) v = f.shifts.K[static_cast<std::size_t>(w[i])] * v;
  return v;
}

IntMatrix separating_map(const FockBasis& basis, const Word& omega, const IntVector& zeta) {
  if (static_cast<int>(omega.size()) != basis.nu) throw WordLengthMismatch();
  IntMatrix q = IntMatrix::Zero(zeta.size(), basis.size());
  q.col(basis.index.at(omega)) = zeta;
  return q;
}

Matrix separating_map(const FockBasis& basis, const Word& omega, const Vector& zeta) {
  if (static_cast<int>(omega.size()) != basis.nu) throw WordLengthMismatch();
  Matrix q = Matrix::Zero(zeta.size(), basis.size());
  q.col(basis.index.at(omega)) = zeta;
  return q;
}

ShiftTuple direct_sum(const ShiftTuple& a, const ShiftTuple& b) {
  if (a.g() != b.g()) throw ShapeMismatch("shift tuples have different variable counts");
  ShiftTuple out;
  for (int j = 0; j < a.g(); ++j) {
    out.S.push_back(block_diag_any(a.S[static_cast<std::size_t>(j)], b.S[static_cast<std::size_t>(j)]));
    out.K.push_back(block_diag_any(a.K[static_cast<std::size_t>(j)], b.K[static_cast<std::size_t>(j)]));
  }
  return out;
}

}  // namespace ncrat::fock
