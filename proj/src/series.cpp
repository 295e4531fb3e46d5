#include "ncrat/series.hpp"

#include <set>

namespace ncrat {

namespace {

struct Series {
  int rows;
  int cols;
  CoefficientMap c;

  Matrix at(const Word& w) const {
    auto it = c.find(w);
    return it == c.end() ? Matrix::Zero(rows, cols) : it->second;
  }
  void add(const Word& w, const Matrix& m) {
    auto [it, inserted] = c.try_emplace(w, m);
    if (!inserted) it->second += m;
  }
  void prune() {
    std::erase_if(c, [](const auto& kv) { return (kv.second.array() == 0.0).all(); });
  }
};

Series series_of(const RationalExpr& e, int max_degree) {
  using Kind = RationalExpr::Kind;
  Series out{e.rows(), e.cols(), {}};
  switch (e.kind()) {
    case Kind::Poly:
      for (const auto& [w, m] : e.polynomial().coefficients()) {
        if (static_cast<int>(w.size()) <= max_degree) out.c.emplace(w, m);
      }
      break;
    case Kind::Sum:
      for (const auto& t : e.children()) {
        for (const auto& [w, m] : series_of(t, max_degree).c) out.add(w, m);
      }
      break;
    case Kind::Product: {
      Series acc = series_of(e.children().front(), max_degree);
      for (std::size_t i = 1; i < e.children().size(); ++i) {
        Series rhs = series_of(e.children()[i], max_degree);
        Series next{acc.rows, rhs.cols, {}};
        for (const auto& [u, a] : acc.c) {
          for (const auto& [v, b] : rhs.c) {
            if (static_cast<int>(u.size() + v.size()) <= max_degree) next.add(u + v, a * b);
          }
        }
        acc = std::move(next);
      }
      out.c = std::move(acc.c);
      break;
    }
    case Kind::Inverse: {
      Series a = series_of(e.children().front(), max_degree);
      const Matrix a0_inv = a.at(Word()).inverse();
      out.c.emplace(Word(), a0_inv);
      for (const auto& w : words_up_to(e.g(), max_degree)) {
        if (w.empty()) continue;
        Matrix s = Matrix::Zero(out.rows, out.cols);
        for (std::size_t k = 1; k <= w.size(); ++k) {
          auto au = a.c.find(w.head(k));
          if (au == a.c.end()) continue;
          auto bv = out.c.find(w.tail(k));
          if (bv == out.c.end()) continue;
          s += au->second * bv->second;
        }
        if (!(s.array() == 0.0).all()) out.c.emplace(w, -a0_inv * s);
      }
      break;
    }
    case Kind::Transpose:
      for (const auto& [w, m] : series_of(e.children().front(), max_degree).c) {
        out.c.emplace(w.transposed(), m.transpose());
      }
      break;
    case Kind::ScalarMul:
      for (const auto& [w, m] : series_of(e.children().front(), max_degree).c) {
        out.c.emplace(w, e.scalar() * m);
      }
      break;
  }
  out.prune();
  return out;
}

}  // namespace

CoefficientMap series_coefficients(const RationalExpr& e, int max_degree) {
  return series_of(e, max_degree).c;
}

std::optional<Word> first_series_mismatch(const CoefficientMap& a, const CoefficientMap& b,
                                          double rel_tol) {
  std::set<Word> words;
  for (const auto& kv : a) words.insert(kv.first);
  for (const auto& kv : b) words.insert(kv.first);
  for (const auto& w : words) {
    auto ia = a.find(w);
    auto ib = b.find(w);
    double scale = 1.0;
    double diff = 0.0;
    if (ia != a.end() && ib != b.end()) {
      if (ia->second.rows() != ib->second.rows() || ia->second.cols() != ib->second.cols()) return w;
      diff = (ia->second - ib->second).norm();
      scale = std::max({1.0, ia->second.norm(), ib->second.norm()});
    } else {
      diff = ia != a.end() ? ia->second.norm() : ib->second.norm();
      scale = std::max(1.0, diff);
    }
    if (diff > rel_tol * scale) return w;
  }
  return std::nullopt;
}

}  // namespace ncrat
