#include "ncrat/json_io.hpp"

#include "ncrat/errors.hpp"

#include <fstream>
#include <sstream>

namespace ncrat::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InvalidArgument(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

void expect_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw InvalidArgument(std::string(what) + " has shape " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                          std::to_string(cols));
  }
}

}  // namespace

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c) == 0.0 ? 0.0 : m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
  if (j.empty()) return Matrix(0, 0);
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InvalidArgument("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw InvalidArgument("matrix entries must be numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

Json to_json(const Realization& r) {
  Json j;
  j["variant"] = r.symmetric() ? "symmetric" : "general";
  j["g"] = r.g();
  j["d"] = r.d();
  j["l"] = r.cols();
  j["J"] = to_json(r.J);
  Json a = Json::array();
  for (const auto& m : r.A) a.push_back(to_json(m));
  j["A"] = std::move(a);
  j["C"] = to_json(r.C);
  j["D"] = to_json(r.D);
  if (!r.symmetric() && !(r.B.rows() == r.C.rows() && r.B.cols() == r.C.cols() && r.B == r.C)) {
    j["B"] = to_json(r.B);
  }
  return j;
}

Realization realization_from_json(const Json& j) {
  const Json& variant = field(j, "variant");
  if (!variant.is_string() || (variant != "symmetric" && variant != "general")) {
    throw InvalidArgument("variant must be \"symmetric\" or \"general\"");
  }
  const int g = int_field(j, "g");
  const int d = int_field(j, "d");
  const int l = int_field(j, "l");
  if (g < 0 || d < 0 || l < 0) throw InvalidArgument("g, d and l must be non-negative");
  Matrix J = matrix_from_json(field(j, "J"));
  if (d == 0) J.resize(0, 0);
  expect_shape(J, d, d, "J");
  const Json& a = field(j, "A");
  if (!a.is_array() || static_cast<int>(a.size()) != g) throw InvalidArgument("A must hold g matrices");
  std::vector<Matrix> A;
  for (const auto& m : a) {
    Matrix Aj = matrix_from_json(m);
    if (d == 0) Aj.resize(0, 0);
    expect_shape(Aj, d, d, "A_j");
    A.push_back(std::move(Aj));
  }
  Matrix C = matrix_from_json(field(j, "C"));
  if (d == 0) C.resize(0, l);
  expect_shape(C, d, l, "C");
  Matrix D = matrix_from_json(field(j, "D"));
  if (variant == "symmetric") {
    expect_shape(D, l, l, "D");
    return make_symmetric(std::move(J), std::move(A), std::move(C), std::move(D));
  }
  if (D.cols() != l) throw InvalidArgument("D must have l columns");
  Matrix B = C;
  if (j.contains("B")) {
    B = matrix_from_json(j.at("B"));
    if (d == 0) B.resize(0, D.rows());
  }
  expect_shape(B, d, D.rows(), "B");
  return make_general(std::move(J), std::move(A), std::move(B), std::move(C), std::move(D));
}

Json to_json(const MatrixTuple& x) {
  Json j;
  j["n"] = x.n();
  j["g"] = x.g();
  Json xs = Json::array();
  for (const auto& m : x.entries()) xs.push_back(to_json(m));
  j["X"] = std::move(xs);
  j["symmetric"] = x.symmetric();
  return j;
}

MatrixTuple tuple_from_json(const Json& j) {
  const int n = int_field(j, "n");
  const int g = int_field(j, "g");
  const Json& xs = field(j, "X");
  if (!xs.is_array() || static_cast<int>(xs.size()) != g) throw InvalidArgument("X must hold g matrices");
  bool symmetric = true;
  if (j.contains("symmetric")) {
    if (!j.at("symmetric").is_boolean()) throw InvalidArgument("symmetric must be a boolean");
    symmetric = j.at("symmetric").get<bool>();
  }
  std::vector<Matrix> entries;
  for (const auto& m : xs) {
    Matrix x = matrix_from_json(m);
    expect_shape(x, n, n, "X_j");
    entries.push_back(std::move(x));
  }
  return MatrixTuple(std::move(entries), symmetric);
}

Json to_json(const CoefficientMap& coeffs) {
  Json out = Json::array();
  for (const auto& [w, c] : coeffs) {
    Json term;
    term["word"] = w.to_string();
    term["coefficient"] = to_json(c);
    out.push_back(std::move(term));
  }
  return out;
}

Json to_json(const EquivalenceResult& res) {
  Json j;
  j["verdict"] = to_string(res.verdict);
  j["max_difference"] = res.max_difference;
  j["samples_used"] = res.samples_used;
  j["witness"] = res.witness ? to_json(*res.witness) : Json(nullptr);
  j["series_mismatch"] = res.series_mismatch ? Json(res.series_mismatch->to_string()) : Json(nullptr);
  return j;
}

Json to_json(const singular::LimitReport& rep) {
  Json j;
  j["direction"] = rep.direction_tag;
  j["converged"] = rep.converged;
  j["limit_value"] = rep.limit_value ? to_json(*rep.limit_value) : Json(nullptr);
  j["growth_exponent_estimate"] = rep.growth_exponent_estimate;
  j["schedule"] = rep.schedule;
  j["skipped"] = rep.skipped;
  j["norms"] = rep.norms;
  return j;
}

Json to_json(const singular::SingularityResidue& res) {
  Json j;
  j["p"] = res.p;
  j["q"] = res.q;
  j["M"] = to_json(res.M);
  j["fit_error"] = res.fit_error;
  return j;
}

Json to_json(const singular::Certificate& cert) {
  Json j;
  j["K"] = to_json(cert.K);
  j["rho"] = cert.rho;
  j["obstruction_norm"] = cert.obstruction_norm;
  j["report"] = to_json(cert.report);
  return j;
}

Json to_json(const lmirep::PositivityVerdict& v) {
  Json j;
  j["in_invertibility_set"] = v.in_invertibility_set;
  j["min_eig"] = v.min_eig;
  j["in_positivity_set"] = v.in_positivity_set;
  j["hidden_singularity_used"] = v.hidden_singularity_used;
  return j;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace ncrat::io
