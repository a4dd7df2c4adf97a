#include "doctest.h"
#include "qrecon/errors.hpp"
#include "qrecon/json_io.hpp"
#include "qrecon/sampling.hpp"

using namespace qrecon;
using io::Json;

TEST_CASE("probability matrix documents") {
  const Json doc = Json::parse(R"({"n": 2, "p": [0.25, 0.75, 0.75, 0.25], "target_labels": ["up", "down"]})");
  const ProbabilityMatrix p = io::parse_probability_matrix(doc);
  CHECK(p(0, 1) == 0.75);
  CHECK_FALSE(p.source().has_value());
  CHECK(p.target()->labels()[0] == "up");
  CHECK(io::to_json(p) == doc);

  CHECK_THROWS_AS(io::parse_matrix_document(Json::parse(R"({"n": 2, "p": [1, 0, 0]})")), io::SchemaError);
  CHECK_THROWS_AS(io::parse_matrix_document(Json::parse(R"({"p": [1]})")), io::SchemaError);
  CHECK_THROWS_AS(io::parse_matrix_document(Json::parse(R"({"n": 0, "p": []})")), io::SchemaError);
  CHECK_THROWS_AS(io::parse_matrix_document(Json::parse(R"({"n": 1, "p": ["x"]})")), io::SchemaError);
  CHECK_THROWS_AS(io::parse_matrix_document(Json::parse(R"({"n": 1, "p": [1], "source_labels": ["a", "b"]})")),
                  io::SchemaError);
  CHECK_THROWS_AS(io::parse_probability_matrix(Json::parse(R"({"n": 2, "p": [0.9, 0, 0.1, 1]})")), ValidationError);
}

TEST_CASE("doubles survive a text round trip bit for bit") {
  Rng rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    const ProbabilityMatrix p = validate_bistochastic(transition_probability_matrix(haar_unitary(5, rng)));
    const std::string text = io::to_json(p).dump();
    const ProbabilityMatrix back = io::parse_probability_matrix(Json::parse(text));
    REQUIRE(back == p);
    REQUIRE(io::to_json(back).dump() == text);
  }
}

TEST_CASE("solver config documents") {
  const SolverConfig cfg = io::parse_solver_config(Json::parse(R"({"tol": 1e-8, "starts": 5})"));
  CHECK(cfg.tol == 1e-8);
  CHECK(cfg.starts == 5);
  CHECK(cfg.max_iter == SolverConfig{}.max_iter);
  CHECK(cfg.seed == 0);
  const SolverConfig full{.tol = 1e-9, .max_iter = 17, .starts = 3, .seed = 18446744073709551615ULL};
  const SolverConfig back = io::parse_solver_config(Json::parse(io::to_json(full).dump()));
  CHECK(back.seed == full.seed);
  CHECK(back.max_iter == 17);
  CHECK_THROWS_AS(io::parse_solver_config(Json::parse(R"({"starts": -1})")), io::SchemaError);
  CHECK_THROWS_AS(io::parse_solver_config(Json::parse(R"({"tol": "small"})")), io::SchemaError);
  CHECK_THROWS_AS(io::parse_solver_config(Json::parse("[1]")), io::SchemaError);
}

TEST_CASE("density documents") {
  Rng rng(2);
  const ComplexMatrix rho = random_density_matrix(3, rng);
  const Json j = io::density_to_json(rho);
  CHECK(j["re"].size() == 9);
  CHECK(io::parse_density_document(j) == rho);
  CHECK_THROWS_AS(io::parse_density_document(Json::parse(R"({"n": 1, "re": [1]})")), io::SchemaError);
}

TEST_CASE("solve report document") {
  SolveReport r;
  r.status = SolveStatus::Infeasible;
  r.residual = 1.25;
  r.obstruction = ObstructionPair{PairAxis::Row, 0, 1, 0.5};
  const Json j = io::to_json(r, 3);
  CHECK(j["status"] == "infeasible");
  CHECK(j["pair"] == Json::array({0, 1}));
  CHECK_FALSE(j.contains("phases"));
}
