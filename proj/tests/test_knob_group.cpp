#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qrecon/errors.hpp"
#include "qrecon/knob_group.hpp"
#include "qrecon/phase_solver.hpp"
#include "qrecon/sampling.hpp"

using namespace qrecon;

namespace {

constexpr double kPi = std::numbers::pi;

KnobTransformation random_rotation(Rng& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
  Eigen::Vector3d axis(gauss(rng), gauss(rng), gauss(rng));
  return KnobTransformation::rotation(axis.normalized(), angle(rng));
}

KnobTransformation random_torus(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> uni(-3.0 * kPi, 3.0 * kPi);
  std::vector<double> phases(n);
  for (double& p : phases) p = uni(rng);
  return KnobTransformation::torus(phases);
}

}  // namespace

TEST_CASE("rotation payloads are canonical") {
  const auto id = KnobGroup::rotations().identity();
  CHECK(id.axis_angle().angle == 0.0);
  CHECK(id.axis_angle().axis == Eigen::Vector3d::UnitZ());

  const auto neg = KnobTransformation::rotation(Eigen::Vector3d::UnitX(), -0.5);
  CHECK(neg.axis_angle().angle == doctest::Approx(0.5));
  CHECK(neg.axis_angle().axis.x() == doctest::Approx(-1.0));

  const auto half = KnobTransformation::rotation(-Eigen::Vector3d::UnitY(), kPi);
  CHECK(half.axis_angle().axis.y() == doctest::Approx(1.0));

  CHECK_THROWS_AS(KnobTransformation::rotation(Eigen::Vector3d(1.0, 1.0, 0.0), 0.3), GroupError);
  CHECK_THROWS_AS(KnobTransformation::rotation(Eigen::Vector3d::UnitZ(), std::nan("")), GroupError);
}

TEST_CASE("compose on rotations") {
  const KnobGroup g = KnobGroup::rotations();
  Rng rng(1);
  const auto r = random_rotation(rng);
  CHECK(payload_distance(g.compose(g.identity(), r), r) < 1e-15);

  const auto quarter = KnobTransformation::rotation(Eigen::Vector3d::UnitZ(), kPi / 2.0);
  const auto turned = g.compose(quarter, quarter);
  CHECK(turned.axis_angle().angle == doctest::Approx(kPi));
  CHECK((turned.axis_angle().axis - Eigen::Vector3d::UnitZ()).norm() < 1e-12);

  // Rx(pi) Ry(pi) = diag(-1,-1,1) = Rz(pi)
  const auto xy = g.compose(KnobTransformation::rotation(Eigen::Vector3d::UnitX(), kPi),
                            KnobTransformation::rotation(Eigen::Vector3d::UnitY(), kPi));
  CHECK(xy.axis_angle().angle == doctest::Approx(kPi));
  CHECK((xy.axis_angle().axis - Eigen::Vector3d::UnitZ()).norm() < 1e-12);

  const Eigen::Vector3d diag = Eigen::Vector3d(1, 1, 1).normalized();
  const auto a = KnobTransformation::rotation(diag, 0.7);
  const auto b = KnobTransformation::rotation(Eigen::Vector3d::UnitX(), 1.1);
  CHECK((g.compose(a, b).rotation_matrix() - a.rotation_matrix() * b.rotation_matrix()).norm() < 1e-14);
}

TEST_CASE("rotations do not commute, torus phases do") {
  const KnobGroup g = KnobGroup::rotations();
  const auto x = KnobTransformation::rotation(Eigen::Vector3d::UnitX(), kPi / 2.0);
  const auto y = KnobTransformation::rotation(Eigen::Vector3d::UnitY(), kPi / 2.0);
  CHECK(payload_distance(g.compose(x, y), g.compose(y, x)) > 0.1);

  const KnobGroup t = KnobGroup::torus(4);
  Rng rng(2);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = random_torus(4, rng);
    const auto b = random_torus(4, rng);
    REQUIRE(t.compose(a, b).phases() == t.compose(b, a).phases());
  }
}

TEST_CASE("group membership is enforced") {
  const KnobGroup t3 = KnobGroup::torus(3);
  const KnobGroup rot = KnobGroup::rotations();
  const auto r = KnobTransformation::rotation(Eigen::Vector3d::UnitZ(), 0.2);
  const auto t = KnobTransformation::torus({0.1, 0.2});
  CHECK_THROWS_AS(t3.compose(t, t), GroupError);
  CHECK_THROWS_AS(rot.compose(r, t), GroupError);
  CHECK_THROWS_AS(rot.represent(t), GroupError);
  CHECK_THROWS_AS(r.phases(), GroupError);
}

TEST_CASE("represent") {
  const KnobGroup rot = KnobGroup::rotations();
  CHECK(rot.represent(rot.identity()) == ComplexMatrix::Identity(2, 2));

  const double theta = 0.83;
  const ComplexMatrix u = rot.represent(KnobTransformation::rotation(Eigen::Vector3d::UnitY(), theta));
  ComplexMatrix expected(2, 2);
  expected << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
  CHECK((u - expected).norm() < 1e-15);

  // Generator check: for small angles U ~ I - i t (n . sigma) / 2.
  const double t = 1e-6;
  const Eigen::Vector3d n = Eigen::Vector3d(0.3, -0.4, 0.5).normalized();
  ComplexMatrix sigma_n(2, 2);
  sigma_n << n.z(), Complex(n.x(), -n.y()), Complex(n.x(), n.y()), -n.z();
  const ComplexMatrix small = rot.represent(KnobTransformation::rotation(n, t));
  const ComplexMatrix linear = ComplexMatrix::Identity(2, 2) - Complex(0.0, t / 2.0) * sigma_n;
  CHECK((small - linear).norm() < 1e-12);

  const KnobGroup torus = KnobGroup::torus(2);
  const ComplexMatrix d = torus.represent(KnobTransformation::torus({0.4, -1.3}));
  CHECK(d(0, 0) == std::polar(1.0, 0.4));
  CHECK(d(1, 1) == std::polar(1.0, -1.3));
  CHECK(d(0, 1) == Complex(0.0, 0.0));

  Rng rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    REQUIRE(unitarity_residual(rot.represent(random_rotation(rng))) < 1e-12);
    REQUIRE(unitarity_residual(KnobGroup::torus(5).represent(random_torus(5, rng))) < 1e-12);
  }
}

TEST_CASE("projective homomorphism") {
  const KnobGroup rot = KnobGroup::rotations();
  const auto id = rot.identity();
  CHECK(projective_homomorphism_check(rot, id, id).holds);

  const auto rx = KnobTransformation::rotation(Eigen::Vector3d::UnitX(), kPi);
  const auto ry = KnobTransformation::rotation(Eigen::Vector3d::UnitY(), kPi);
  const ProjectiveCheck xy = projective_homomorphism_check(rot, rx, ry);
  CHECK(xy.holds);
  CHECK(std::abs(std::abs(xy.phase.real()) - 1.0) < 1e-12);

  Rng rng(4);
  bool saw_plus = false;
  bool saw_minus = false;
  for (int rep = 0; rep < 300; ++rep) {
    const ProjectiveCheck c = projective_homomorphism_check(rot, random_rotation(rng), random_rotation(rng));
    REQUIRE(c.holds);
    REQUIRE(std::abs(std::abs(c.phase.real()) - 1.0) < 1e-9);
    (c.phase.real() > 0 ? saw_plus : saw_minus) = true;
  }
  // SU(2) covers SO(3) twice: both signs occur.
  CHECK(saw_plus);
  CHECK(saw_minus);

  const KnobGroup torus = KnobGroup::torus(3);
  for (int rep = 0; rep < 100; ++rep) {
    const ProjectiveCheck c = projective_homomorphism_check(torus, random_torus(3, rng), random_torus(3, rng));
    REQUIRE(c.holds);
    REQUIRE(std::abs(c.phase - Complex(1.0, 0.0)) < 1e-15);
  }
}

TEST_CASE("inverse law") {
  const KnobGroup rot = KnobGroup::rotations();
  Rng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const auto g = random_rotation(rng);
    const ComplexMatrix u = rot.represent(rot.compose(g, rot.inverse(g)));
    const Complex c = u.trace() / 2.0;
    REQUIRE((u - c * ComplexMatrix::Identity(2, 2)).norm() < 1e-10);
    REQUIRE(std::abs(std::abs(c) - 1.0) < 1e-10);
  }
}

TEST_CASE("commutative limit is classical") {
  CHECK(commutative_limit_probabilities({0.0, 0.0, 0.0}).values() == RealMatrix::Identity(3, 3));
  CHECK(commutative_limit_probabilities({2.0}).values() == RealMatrix::Identity(1, 1));
  Rng rng(6);
  std::uniform_real_distribution<double> uni(-10.0, 10.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> phases(5);
    for (double& p : phases) p = uni(rng);
    REQUIRE((commutative_limit_probabilities(phases).values() - RealMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() <
            1e-14);
  }
}

TEST_CASE("Stern-Gerlach transition probabilities") {
  CHECK((stern_gerlach_transition(0.0).values() - RealMatrix::Identity(2, 2)).norm() < 1e-15);
  CHECK((stern_gerlach_transition(kPi / 2.0).values().array() - 0.5).abs().maxCoeff() < 1e-15);
  RealMatrix flip(2, 2);
  flip << 0, 1, 1, 0;
  CHECK((stern_gerlach_transition(kPi).values() - flip).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("phase solver recovers the spin-1/2 representation") {
  const KnobGroup rot = KnobGroup::rotations();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.05, 2.0 * kPi - 0.05);
  for (int rep = 0; rep < 100; ++rep) {
    const double theta = uni(rng);
    if (std::abs(theta - kPi) < 0.05) continue;  // off-diagonal-only matrix, phases undefined
    const ProbabilityMatrix p = stern_gerlach_transition(theta);
    const SolveReport r = solve_phases(p, SolverConfig{.starts = 4});
    REQUIRE(r.status == SolveStatus::Feasible);
    const ComplexMatrix u = rot.represent(KnobTransformation::rotation(Eigen::Vector3d::UnitY(), theta));
    const PhaseMatrix from_group = gauge_fix_phases_of(u);
    REQUIRE(std::abs(wrap_phase(from_group(1, 1) - (*r.phases)(1, 1))) < 1e-6);
  }
}
