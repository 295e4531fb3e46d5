#ifndef NCRAT_JSON_IO_HPP
#define NCRAT_JSON_IO_HPP

#include "ncrat/equivalence.hpp"
#include "ncrat/fock.hpp"
#include "ncrat/linalg.hpp"
#include "ncrat/lmirep.hpp"
#include "ncrat/matrix_tuple.hpp"
#include "ncrat/realization.hpp"
#include "ncrat/singular.hpp"

#include <json.hpp>

#include <string>

namespace ncrat::io {

using Json = nlohmann::ordered_json;

// Matrices are row-major arrays of rows. Malformed input throws InvalidArgument.
Json to_json(const Matrix& m);
Json to_json(const IntMatrix& m);
Matrix matrix_from_json(const Json& j);

// {"variant","g","d","l","J","A","C","D"}; "B" is written only for General
// realizations whose B differs from C, and read when present.
Json to_json(const Realization& r);
Realization realization_from_json(const Json& j);

// {"n","g","X","symmetric"}
Json to_json(const MatrixTuple& x);
MatrixTuple tuple_from_json(const Json& j);

Json to_json(const CoefficientMap& coeffs);
Json to_json(const EquivalenceResult& res);
Json to_json(const singular::LimitReport& rep);
Json to_json(const singular::SingularityResidue& res);
Json to_json(const singular::Certificate& cert);
Json to_json(const lmirep::PositivityVerdict& v);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace ncrat::io

#endif  // NCRAT_JSON_IO_HPP
