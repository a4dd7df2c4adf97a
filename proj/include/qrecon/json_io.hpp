#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qrecon/hardy.hpp"
#include "qrecon/modality.hpp"
#include "qrecon/phase_solver.hpp"

namespace qrecon::io {

using Json = nlohmann::ordered_json;

// Document has the wrong shape (missing key, wrong type, wrong array length).
class SchemaError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// {"n": int, "p": [row-major doubles], "source_labels"?: [str], "target_labels"?: [str]}
struct MatrixDocument {
  RealMatrix p;
  std::optional<ModalitySet> source;
  std::optional<ModalitySet> target;
};

MatrixDocument parse_matrix_document(const Json& j);
ProbabilityMatrix parse_probability_matrix(const Json& j, double tol = kDefaultValidationTol);
Json to_json(const ProbabilityMatrix& p);

// {"tol": double, "max_iter": int, "starts": int, "seed": int}; missing keys
// keep the values already in `base`.
SolverConfig parse_solver_config(const Json& j, SolverConfig base = {});
Json to_json(const SolverConfig& cfg);

Json to_json(const SolveReport& report, std::size_t n);

// {"n": int, "re": [row-major], "im": [row-major]}
ComplexMatrix parse_density_document(const Json& j);
Json density_to_json(const ComplexMatrix& rho);

// [[re, im], ...] in row-major order.
Json complex_entries(const ComplexMatrix& m);
Json row_major(const RealMatrix& m);

RealVector parse_probability_vector(const Json& j);

}  // namespace qrecon::io
