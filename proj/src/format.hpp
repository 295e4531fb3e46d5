#ifndef NCRAT_SRC_FORMAT_HPP
#define NCRAT_SRC_FORMAT_HPP

#include "ncrat/linalg.hpp"

#include <charconv>
#include <string>

namespace ncrat::detail {

// Shortest text that round-trips to the same double.
inline std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// "[a, b; c, d]" in the expression grammar.
inline std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_number(m(i, j));
    }
  }
  return out + "]";
}

}  // namespace ncrat::detail

#endif  // NCRAT_SRC_FORMAT_HPP
