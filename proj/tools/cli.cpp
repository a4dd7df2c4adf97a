#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qrecon/errors.hpp"
#include "qrecon/hardy.hpp"
#include "qrecon/json_io.hpp"
#include "qrecon/knob_group.hpp"
#include "qrecon/modality.hpp"
#include "qrecon/phase_solver.hpp"

namespace qrecon::cli {

namespace {

using io::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string output;
  std::string config;
  double tol = kDefaultUnitaryTol;
  double validation_tol = kDefaultValidationTol;
  std::uint64_t seed = 0;
  std::size_t starts = 32;
  std::size_t max_iter = 500;
  std::size_t threads = 1;

  std::vector<double> axis;
  double angle = 0.0;
  std::vector<double> phases;

  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> nb;
  std::string kind = "quantum";
  std::vector<std::uint64_t> ns;
  std::vector<std::uint64_t> ks;
};

Json read_json_file(const std::string& path) {
  if (path.empty()) throw UsageError("--input is required");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json rejection(const ValidationError& e) {
  Json j;
  j["status"] = "rejected";
  j["violation"] = to_string(e.violation());
  j["row"] = e.row();
  j["column"] = e.col();
  j["deficit"] = e.deficit();
  j["message"] = e.what();
  return j;
}

int status_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return kOk;
    case SolveStatus::Infeasible: return kRejected;
    case SolveStatus::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

SolverConfig solver_config(const Options& o, const CLI::App& sub) {
  SolverConfig cfg;
  if (!o.config.empty()) cfg = io::parse_solver_config(read_json_file(o.config));
  // Explicit flags win over the config file.
  if (o.config.empty() || sub.count("--tol")) cfg.tol = o.tol;
  if (o.config.empty() || sub.count("--seed")) cfg.seed = o.seed;
  if (o.config.empty() || sub.count("--starts")) cfg.starts = o.starts;
  if (o.config.empty() || sub.count("--max-iter")) cfg.max_iter = o.max_iter;
  cfg.threads = o.threads;
  return cfg;
}

struct Result {
  Json body;
  int code;
};

Result do_validate(const Options& o) {
  const io::MatrixDocument doc = io::parse_matrix_document(read_json_file(o.input));
  const ProbabilityMatrix p = validate_bistochastic(doc.p, o.validation_tol, doc.source, doc.target);
  Json j = io::to_json(p);
  j["status"] = "valid";
  return {j, kOk};
}

Result do_solve(const Options& o, const CLI::App& sub) {
  const ProbabilityMatrix p = io::parse_probability_matrix(read_json_file(o.input), o.validation_tol);
  const SolveReport report = solve_phases(p, solver_config(o, sub));
  return {io::to_json(report, p.dimension()), status_code(report.status)};
}

Result do_roundtrip(const Options& o, const CLI::App& sub) {
  const ProbabilityMatrix p = io::parse_probability_matrix(read_json_file(o.input), o.validation_tol);
  const SolveReport report = solve_phases(p, solver_config(o, sub));
  Json j;
  j["status"] = std::string(to_string(report.status));
  j["residual"] = report.residual;
  if (report.phases) {
    const ComplexMatrix sigma_tilde = apply_phases(sqrt_matrix(p), *report.phases);
    const RealMatrix back = transition_probability_matrix(sigma_tilde);
    j["max_entry_error"] = (back - p.values()).cwiseAbs().maxCoeff();
    j["unitary"] = io::complex_entries(sigma_tilde);
    j["reconstructed"] = io::row_major(back);
  }
  return {j, status_code(report.status)};
}

Result do_certify3(const Options& o) {
  const ProbabilityMatrix p = io::parse_probability_matrix(read_json_file(o.input), o.validation_tol);
  if (p.dimension() != 3) throw UsageError("certify3 needs a 3x3 matrix");
  const N3Certificate cert = certify_n3(p);
  Json j;
  if (cert.feasible) {
    j["status"] = "feasible";
    return {j, kOk};
  }
  j["status"] = "infeasible";
  j["pair"] = Json::array({cert.obstruction->first, cert.obstruction->second});
  j["axis"] = std::string(to_string(cert.obstruction->axis));
  j["gap"] = cert.obstruction->gap;
  return {j, kRejected};
}

Result do_knob_demo(const Options& o) {
  if (o.axis.size() != 3) throw UsageError("--axis takes exactly three numbers");
  Eigen::Vector3d axis(o.axis[0], o.axis[1], o.axis[2]);
  if (!(axis.norm() > 0.0)) throw UsageError("--axis must be nonzero");
  axis.normalize();
  const KnobGroup group = KnobGroup::rotations();
  const KnobTransformation g = KnobTransformation::rotation(axis, o.angle);
  const ComplexMatrix u = group.represent(g);
  Json j;
  j["axis"] = Json::array({g.axis_angle().axis.x(), g.axis_angle().axis.y(), g.axis_angle().axis.z()});
  j["angle"] = g.axis_angle().angle;
  j["unitary"] = io::complex_entries(u);
  j["probabilities"] = io::row_major(transition_probability_matrix(u));
  return {j, kOk};
}

Result do_commutative_demo(const Options& o) {
  if (o.phases.empty()) throw UsageError("--phases needs at least one value");
  return {io::to_json(commutative_limit_probabilities(o.phases)), kOk};
}

Result do_tomography(const Options& o) {
  const RealVector p = io::parse_probability_vector(read_json_file(o.input));
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(p.size()))));
  if (n == 0 || n * n != static_cast<std::size_t>(p.size())) {
    throw UsageError("tomography needs N^2 probabilities, got " + std::to_string(p.size()));
  }
  const Reconstruction rec = tomography_reconstruct(p, build_fiducial_set(n));
  Json j = io::density_to_json(rec.rho);
  j["trace"] = rec.trace;
  j["min_eigenvalue"] = rec.min_eigenvalue;
  j["physical"] = rec.physical;
  return {j, rec.physical ? kOk : kRejected};
}

Result do_hardy_count(const Options& o) {
  const TheoryKind kind = parse_theory_kind(o.kind);
  if (!o.ns.empty() || !o.ks.empty()) {
    const PowerLaw fit = infer_power(o.ns, o.ks);
    Json j;
    if (fit.exponent) {
      j["r"] = *fit.exponent;
      return {j, kOk};
    }
    const std::size_t i = *fit.failing_pair;
    j["failure"] = Json{{"index", i}, {"n", o.ns[i]}, {"k", o.ks[i]}};
    return {j, kRejected};
  }
  if (o.n && o.nb) {
    const CompositeCounts c = composite_counts(*o.n, *o.nb, kind);
    Json j;
    j["kind"] = std::string(to_string(kind));
    j["N"] = c.n;
    j["K"] = c.k;
    j["K_direct"] = capacity(kind, c.n);
    j["consistent"] = c.consistent;
    return {j, c.consistent ? kOk : kRejected};
  }
  if (o.n) {
    Json j;
    j["kind"] = std::string(to_string(kind));
    j["N"] = *o.n;
    j["K"] = capacity(kind, *o.n);
    return {j, kOk};
  }
  Json table = Json::array();
  for (std::uint64_t n = 1; n <= 6; ++n) {
    table.push_back(Json{{"N", n},
                         {"classical", capacity(TheoryKind::Classical, n)},
                         {"quantum", capacity(TheoryKind::Quantum, n)}});
  }
  return {Json{{"table", table}}, kOk};
}

void add_io(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Input JSON file")->required();
  sub->add_option("--output", o.output, "Write JSON here instead of stdout");
}

void add_solver_flags(CLI::App* sub, Options& o) {
  sub->add_option("--tol", o.tol, "Unitarity tolerance")->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed for random starts (default 0, never time based)")->capture_default_str();
  sub->add_option("--starts", o.starts, "Number of solver starts")->capture_default_str();
  sub->add_option("--max-iter", o.max_iter, "Iterations per start")->capture_default_str();
  sub->add_option("--config", o.config, "Solver config JSON {tol, max_iter, starts, seed}");
  sub->add_option("--threads", o.threads, "Worker threads (0 = all cores); never changes the result")
      ->capture_default_str();
  sub->add_option("--validation-tol", o.validation_tol, "Bistochastic validation tolerance")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Phase completion, knob groups and tomography for modality transition matrices", "qrecon"};
  app.require_subcommand(1, 1);

  auto* validate = app.add_subcommand("validate", "Check that a probability matrix is bistochastic");
  add_io(validate, o);
  validate->add_option("--tol", o.validation_tol, "Validation tolerance")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "Find phases that make the square-root matrix unitary");
  add_io(solve, o);
  add_solver_flags(solve, o);

  auto* roundtrip = app.add_subcommand("roundtrip", "Solve, rebuild the unitary and recompute probabilities");
  add_io(roundtrip, o);
  add_solver_flags(roundtrip, o);

  auto* certify3 = app.add_subcommand("certify3", "Exact unistochasticity verdict for 3x3 matrices");
  add_io(certify3, o);
  certify3->add_option("--validation-tol", o.validation_tol, "Bistochastic validation tolerance");

  auto* knob = app.add_subcommand("knob-demo", "Spin-1/2 representation of a rotation");
  knob->add_option("--axis", o.axis, "Rotation axis (three numbers)")->expected(3)->required();
  knob->add_option("--angle", o.angle, "Rotation angle in radians")->required();
  knob->add_option("--output", o.output, "Write JSON here instead of stdout");

  auto* commutative = app.add_subcommand("commutative-demo", "Probabilities of a diagonal phase representation");
  commutative->add_option("--phases", o.phases, "Phases in radians")->required();
  commutative->add_option("--output", o.output, "Write JSON here instead of stdout");

  auto* tomography = app.add_subcommand("tomography", "Rebuild a density matrix from N^2 fiducial probabilities");
  add_io(tomography, o);

  auto* hardy = app.add_subcommand("hardy-count", "Capacity K(N), composite counts and power-law fits");
  hardy->add_option("--n", o.n, "Dimension N (or N_A with --nb)");
  hardy->add_option("--nb", o.nb, "Second subsystem dimension N_B");
  hardy->add_option("--kind", o.kind, "classical or quantum")->capture_default_str();
  hardy->add_option("--ns", o.ns, "Dimensions for a power-law fit");
  hardy->add_option("--ks", o.ks, "Capacities for a power-law fit");
  hardy->add_option("--output", o.output, "Write JSON here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  Result result{Json::object(), kUsage};
  try {
    if (*validate) {
      result = do_validate(o);
    } else if (*solve) {
      result = do_solve(o, *solve);
    } else if (*roundtrip) {
      result = do_roundtrip(o, *roundtrip);
    } else if (*certify3) {
      result = do_certify3(o);
    } else if (*knob) {
      result = do_knob_demo(o);
    } else if (*commutative) {
      result = do_commutative_demo(o);
    } else if (*tomography) {
      result = do_tomography(o);
    } else if (*hardy) {
      result = do_hardy_count(o);
    }
  } catch (const ValidationError& e) {
    result = {rejection(e), kRejected};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const std::string text = result.body.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream file(o.output);
    if (!file) {
      err << "error: cannot write " << o.output << '\n';
      return kUsage;
    }
    file << text;
  }
  return result.code;
}

}  // namespace qrecon::cli
