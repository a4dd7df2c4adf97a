#include "qrecon/json_io.hpp"

#include <cmath>

namespace qrecon::io {

namespace {

std::size_t read_dimension(const Json& j) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw SchemaError("\"n\" must be an integer");
  const auto n = j["n"].get<long long>();
  if (n < 1) throw SchemaError("\"n\" must be positive");
  return static_cast<std::size_t>(n);
}

RealMatrix read_square(const Json& j, const char* key, std::size_t n) {
  if (!j.contains(key) || !j[key].is_array()) throw SchemaError(std::string("\"") + key + "\" must be an array");
  const Json& arr = j[key];
  if (arr.size() != n * n) {
    throw SchemaError(std::string("\"") + key + "\" has " + std::to_string(arr.size()) + " entries, expected " +
                      std::to_string(n * n));
  }
  const auto dim = static_cast<Eigen::Index>(n);
  RealMatrix m(dim, dim);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    if (!arr[k].is_number()) throw SchemaError(std::string("\"") + key + "\" entries must be numbers");
    m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = arr[k].get<double>();
  }
  return m;
}

std::optional<ModalitySet> read_labels(const Json& j, const char* key, std::size_t n) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_array()) throw SchemaError(std::string("\"") + key + "\" must be an array of strings");
  std::vector<std::string> labels;
  for (const auto& l : j[key]) {
    if (!l.is_string()) throw SchemaError(std::string("\"") + key + "\" must be an array of strings");
    labels.push_back(l.get<std::string>());
  }
  if (labels.size() != n) throw SchemaError(std::string("\"") + key + "\" must have n entries");
  return ModalitySet(std::move(labels));
}

template <typename T>
T read_nonnegative_integer(const Json& j, const char* key) {
  const Json& v = j[key];
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw SchemaError(std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return j[key].get<T>();
}

}  // namespace

Json row_major(const RealMatrix& m) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  }
  return arr;
}

Json complex_entries(const ComplexMatrix& m) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  }
  return arr;
}

MatrixDocument parse_matrix_document(const Json& j) {
  const std::size_t n = read_dimension(j);
  return {read_square(j, "p", n), read_labels(j, "source_labels", n), read_labels(j, "target_labels", n)};
}

ProbabilityMatrix parse_probability_matrix(const Json& j, double tol) {
  MatrixDocument doc = parse_matrix_document(j);
  return validate_bistochastic(doc.p, tol, std::move(doc.source), std::move(doc.target));
}

Json to_json(const ProbabilityMatrix& p) {
  Json j;
  j["n"] = p.dimension();
  j["p"] = row_major(p.values());
  if (p.source()) j["source_labels"] = p.source()->labels();
  if (p.target()) j["target_labels"] = p.target()->labels();
  return j;
}

SolverConfig parse_solver_config(const Json& j, SolverConfig base) {
  if (!j.is_object()) throw SchemaError("solver config must be a JSON object");
  if (j.contains("tol")) {
    if (!j["tol"].is_number()) throw SchemaError("\"tol\" must be a number");
    base.tol = j["tol"].get<double>();
  }
  if (j.contains("max_iter")) base.max_iter = read_nonnegative_integer<std::size_t>(j, "max_iter");
  if (j.contains("starts")) base.starts = read_nonnegative_integer<std::size_t>(j, "starts");
  if (j.contains("seed")) base.seed = read_nonnegative_integer<std::uint64_t>(j, "seed");
  return base;
}

Json to_json(const SolverConfig& cfg) {
  return Json{{"tol", cfg.tol}, {"max_iter", cfg.max_iter}, {"starts", cfg.starts}, {"seed", cfg.seed}};
}

Json to_json(const SolveReport& report, std::size_t n) {
  Json j;
  j["status"] = std::string(to_string(report.status));
  j["n"] = n;
  j["residual"] = report.residual;
  j["starts_used"] = report.starts_used;
  j["iterations_total"] = report.iterations_total;
  j["seed"] = report.seed;
  j["best_start"] = report.best_start;
  if (report.phases) j["phases"] = row_major(report.phases->values());
  if (report.obstruction) {
    j["pair"] = Json::array({report.obstruction->first, report.obstruction->second});
    j["axis"] = std::string(to_string(report.obstruction->axis));
    j["gap"] = report.obstruction->gap;
  }
  return j;
}

ComplexMatrix parse_density_document(const Json& j) {
  const std::size_t n = read_dimension(j);
  const RealMatrix re = read_square(j, "re", n);
  const RealMatrix im = read_square(j, "im", n);
  ComplexMatrix rho(re.rows(), re.cols());
  rho.real() = re;
  rho.imag() = im;
  return rho;
}

Json density_to_json(const ComplexMatrix& rho) {
  Json j;
  j["n"] = rho.rows();
  j["re"] = row_major(rho.real());
  j["im"] = row_major(rho.imag());
  return j;
}

RealVector parse_probability_vector(const Json& j) {
  if (!j.is_array()) throw SchemaError("probabilities must be a JSON array");
  RealVector p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) throw SchemaError("probabilities must be numbers");
    p(static_cast<Eigen::Index>(k)) = j[k].get<double>();
  }
  return p;
}

}  // namespace qrecon::io
