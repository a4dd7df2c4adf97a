#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qrecon/errors.hpp"
#include "qrecon/hardy.hpp"
#include "qrecon/knob_group.hpp"
#include "qrecon/linalg.hpp"
#include "qrecon/modality.hpp"
#include "qrecon/phase_solver.hpp"
#include "qrecon/sampling.hpp"

namespace py = pybind11;
using namespace qrecon;

namespace {

ProbabilityMatrix as_probability(const RealMatrix& p, double tol) { return validate_bistochastic(p, tol); }

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["status"] = std::string(to_string(r.status));
  d["residual"] = r.residual;
  d["starts_used"] = r.starts_used;
  d["iterations_total"] = r.iterations_total;
  d["seed"] = r.seed;
  d["best_start"] = r.best_start;
  d["phases"] = r.phases ? py::cast(r.phases->values()) : py::none();
  if (r.obstruction) {
    d["axis"] = std::string(to_string(r.obstruction->axis));
    d["pair"] = py::make_tuple(r.obstruction->first, r.obstruction->second);
    d["gap"] = r.obstruction->gap;
  }
  return d;
}

KnobTransformation rotation(const Eigen::Vector3d& axis, double angle) {
  return KnobTransformation::rotation(axis, angle);
}

}  // namespace

PYBIND11_MODULE(_qrecon, m) {
  m.doc() = "Unitary reconstruction of transition-probability data";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<GroupError>(m, "GroupError", PyExc_ValueError);
  py::register_exception<SupportError>(m, "SupportError", PyExc_RuntimeError);
  py::register_exception<BoundsError>(m, "BoundsError", PyExc_IndexError);

  m.def("unitarity_residual", &unitarity_residual, py::arg("m"));
  m.def("is_unitary", &is_unitary, py::arg("m"), py::arg("tol") = kDefaultUnitaryTol);
  m.def("extract_probability", &extract_probability, py::arg("sigma_tilde"), py::arg("i"), py::arg("j"));
  m.def("transition_probability_matrix", &transition_probability_matrix, py::arg("sigma_tilde"));

  m.def(
      "validate_bistochastic",
      [](const RealMatrix& p, double tol) { return as_probability(p, tol).values(); },
      py::arg("p"), py::arg("tol") = kDefaultValidationTol);
  m.def("independent_parameter_count", &independent_parameter_count, py::arg("n"));
  m.def("normalization_constraint_rank", &normalization_constraint_rank, py::arg("n"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init([](double tol, std::size_t max_iter, std::size_t starts, std::uint64_t seed, std::size_t threads) {
             SolverConfig c{tol, max_iter, starts, seed, threads};
             c.validate();
             return c;
           }),
           py::arg("tol") = kDefaultUnitaryTol, py::arg("max_iter") = 500, py::arg("starts") = 32,
           py::arg("seed") = 0, py::arg("threads") = 1)
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("max_iter", &SolverConfig::max_iter)
      .def_readwrite("starts", &SolverConfig::starts)
      .def_readwrite("seed", &SolverConfig::seed)
      .def_readwrite("threads", &SolverConfig::threads);

  m.def("gauge_fix", [](const RealMatrix& raw) { return gauge_fix(raw).values(); }, py::arg("phi"));
  m.def(
      "apply_phases", [](const RealMatrix& sigma, const RealMatrix& phi) { return apply_phases(sigma, phi); },
      py::arg("sigma"), py::arg("phi"));
  m.def(
      "solve_phases",
      [](const RealMatrix& p, const SolverConfig& cfg, double validation_tol) {
        return report_dict(solve_phases(as_probability(p, validation_tol), cfg));
      },
      py::arg("p"), py::arg("config") = SolverConfig{}, py::arg("validation_tol") = kDefaultValidationTol);
  m.def(
      "certify_n3",
      [](const RealMatrix& p, double tol) {
        const N3Certificate c = certify_n3(as_probability(p, kDefaultValidationTol), tol);
        py::dict d;
        d["feasible"] = c.feasible;
        if (c.obstruction) {
          d["axis"] = std::string(to_string(c.obstruction->axis));
          d["pair"] = py::make_tuple(c.obstruction->first, c.obstruction->second);
          d["gap"] = c.obstruction->gap;
        }
        return d;
      },
      py::arg("p"), py::arg("tol") = 1e-9);

  py::class_<KnobTransformation>(m, "KnobTransformation")
      .def_static("rotation", &rotation, py::arg("axis"), py::arg("angle"))
      .def_static("torus", &KnobTransformation::torus, py::arg("phases"))
      .def_property_readonly("axis", [](const KnobTransformation& g) { return g.axis_angle().axis; })
      .def_property_readonly("angle", [](const KnobTransformation& g) { return g.axis_angle().angle; })
      .def_property_readonly("phases", &KnobTransformation::phases);

  py::class_<KnobGroup>(m, "KnobGroup")
      .def_static("rotations", &KnobGroup::rotations)
      .def_static("torus", &KnobGroup::torus, py::arg("n"))
      .def_property_readonly("dimension", &KnobGroup::dimension)
      .def("identity", &KnobGroup::identity)
      .def("compose", &KnobGroup::compose, py::arg("g1"), py::arg("g2"))
      .def("inverse", &KnobGroup::inverse, py::arg("g"))
      .def("represent", &KnobGroup::represent, py::arg("g"));

  py::class_<ProjectiveCheck>(m, "ProjectiveCheck")
      .def_readonly("holds", &ProjectiveCheck::holds)
      .def_readonly("phase", &ProjectiveCheck::phase)
      .def_readonly("distance", &ProjectiveCheck::distance)
      .def_readonly("scanned", &ProjectiveCheck::scanned);
  m.def("projective_homomorphism_check", &projective_homomorphism_check, py::arg("group"), py::arg("g1"),
        py::arg("g2"), py::arg("tol") = 1e-9);
  m.def(
      "commutative_limit_probabilities",
      [](const std::vector<double>& phases) { return commutative_limit_probabilities(phases).values(); },
      py::arg("phases"));

  m.def(
      "capacity", [](const std::string& kind, std::uint64_t n) { return capacity(parse_theory_kind(kind), n); },
      py::arg("kind"), py::arg("n"));
  m.def(
      "infer_power",
      [](const std::vector<std::uint64_t>& ns, const std::vector<std::uint64_t>& ks) -> py::object {
        const PowerLaw law = infer_power(ns, ks);
        return law.exponent ? py::cast(*law.exponent) : py::none();
      },
      py::arg("ns"), py::arg("ks"));

  py::class_<FiducialSet>(m, "FiducialSet")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def_property_readonly("dimension", &FiducialSet::dimension)
      .def_property_readonly("projectors", &FiducialSet::projectors)
      .def_property_readonly("frame", &FiducialSet::frame)
      .def_property_readonly("condition_number", &FiducialSet::condition_number);
  m.def(
      "probabilities_of", [](const ComplexMatrix& rho, const FiducialSet& f) { return probabilities_of(rho, f); },
      py::arg("rho"), py::arg("fiducials"));

  py::class_<Reconstruction>(m, "Reconstruction")
      .def_readonly("rho", &Reconstruction::rho)
      .def_readonly("trace", &Reconstruction::trace)
      .def_readonly("min_eigenvalue", &Reconstruction::min_eigenvalue)
      .def_readonly("physical", &Reconstruction::physical);
  m.def("tomography_reconstruct", &tomography_reconstruct, py::arg("p"), py::arg("fiducials"));

  m.def(
      "haar_unitary",
      [](std::size_t n, std::uint64_t seed) {
        Rng rng(seed);
        return haar_unitary(n, rng);
      },
      py::arg("n"), py::arg("seed") = 0);
  m.def(
      "random_bistochastic",
      [](std::size_t n, std::uint64_t seed, std::size_t terms) {
        Rng rng(seed);
        return random_bistochastic(n, rng, terms);
      },
      py::arg("n"), py::arg("seed") = 0, py::arg("terms") = 0);
}
