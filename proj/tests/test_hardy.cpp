#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qrecon/errors.hpp"
#include "qrecon/hardy.hpp"
#include "qrecon/sampling.hpp"

using namespace qrecon;

TEST_CASE("capacity") {
  CHECK(capacity(TheoryKind::Classical, 5) == 5);
  CHECK(capacity(TheoryKind::Quantum, 2) == 4);
  CHECK(capacity(TheoryKind::Quantum, 1) == 1);
  CHECK_THROWS_AS(capacity(TheoryKind::Quantum, 0), DomainError);
  CHECK(parse_theory_kind("classical") == TheoryKind::Classical);
  CHECK_THROWS_AS(parse_theory_kind("bohmian"), DomainError);
}

TEST_CASE("composite counts are multiplicative") {
  const CompositeCounts q = composite_counts(2, 3, TheoryKind::Quantum);
  CHECK(q.n == 6);
  CHECK(q.k == 36);
  CHECK(capacity(TheoryKind::Quantum, 6) == 36);
  const CompositeCounts c = composite_counts(2, 3, TheoryKind::Classical);
  CHECK(c.n == 6);
  CHECK(c.k == 6);
  for (auto kind : {TheoryKind::Classical, TheoryKind::Quantum}) {
    for (std::uint64_t a = 1; a <= 6; ++a) {
      for (std::uint64_t b = 1; b <= 6; ++b) {
        const CompositeCounts cc = composite_counts(a, b, kind);
        REQUIRE(cc.consistent);
        REQUIRE(cc.k == capacity(kind, a * b));
      }
    }
    CHECK(composite_counts(1, 4, kind).k == capacity(kind, 4));
  }
}

TEST_CASE("infer_power") {
  const PowerLaw quantum = infer_power({2, 3, 4}, {4, 9, 16});
  CHECK(quantum.exponent == 2u);
  CHECK_FALSE(quantum.failing_pair.has_value());
  CHECK(infer_power({2, 3}, {2, 3}).exponent == 1u);

  const PowerLaw broken = infer_power({2, 3}, {4, 8});
  CHECK_FALSE(broken.exponent.has_value());
  CHECK(broken.failing_pair == std::size_t{1});

  CHECK(infer_power({2}, {6}).failing_pair == std::size_t{0});
  CHECK_THROWS_AS(infer_power({1, 2}, {1, 4}), DomainError);
  CHECK_THROWS_AS(infer_power({2, 3}, {4}), DomainError);
}

TEST_CASE("self-adjoint matrices need N^2 real numbers") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto basis = self_adjoint_basis(n);
    REQUIRE(basis.size() == capacity(TheoryKind::Quantum, n));
    // Real Gram matrix of the basis under Re Tr(A^dagger B) is the identity.
    const auto k = static_cast<Eigen::Index>(basis.size());
    RealMatrix gram(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      REQUIRE((basis[static_cast<std::size_t>(a)] - basis[static_cast<std::size_t>(a)].adjoint()).norm() == 0.0);
      for (Eigen::Index b = 0; b < k; ++b) {
        gram(a, b) = (basis[static_cast<std::size_t>(a)].adjoint() * basis[static_cast<std::size_t>(b)]).trace().real();
      }
    }
    REQUIRE((gram - RealMatrix::Identity(k, k)).norm() < 1e-14);
  }
}

TEST_CASE("fiducial sets") {
  const FiducialSet one = build_fiducial_set(1);
  CHECK(one.size() == 1);
  CHECK(one.projectors()[0] == ComplexMatrix::Identity(1, 1));

  const FiducialSet two = build_fiducial_set(2);
  REQUIRE(two.size() == 4);
  // Frame for e0, e1, (e0+e1)/sqrt2, (e0+i e1)/sqrt2 has determinant 1/4.
  CHECK(two.frame().determinant() == doctest::Approx(0.25).epsilon(1e-14));
  const ComplexMatrix plus_i = two.projectors()[3];
  CHECK(std::abs(plus_i(1, 0) - Complex(0.0, 0.5)) < 1e-15);

  for (std::size_t n : {2u, 3u, 4u, 5u}) {
    const FiducialSet f = build_fiducial_set(n);
    REQUIRE(f.size() == n * n);
    REQUIRE(std::isfinite(f.condition_number()));
    MESSAGE("frame condition number at N=" << n << ": " << f.condition_number());
    for (const auto& p : f.projectors()) {
      REQUIRE((p * p - p).norm() < 1e-12);
      REQUIRE(std::abs(p.trace() - Complex(1.0, 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("probabilities_of on hand-checked states") {
  const FiducialSet f = build_fiducial_set(2);
  const RealVector e0 = probabilities_of(DensityMatrix::pure(Eigen::Vector2cd(1.0, 0.0)), f);
  CHECK((e0 - Eigen::Vector4d(1.0, 0.0, 0.5, 0.5)).norm() < 1e-15);
  const RealVector e1 = probabilities_of(DensityMatrix::pure(Eigen::Vector2cd(0.0, 1.0)), f);
  CHECK((e1 - Eigen::Vector4d(0.0, 1.0, 0.5, 0.5)).norm() < 1e-15);
  const RealVector mixed = probabilities_of(DensityMatrix(ComplexMatrix::Identity(2, 2) / 2.0), f);
  CHECK((mixed - Eigen::Vector4d::Constant(0.5)).norm() < 1e-15);
  CHECK_THROWS_AS(probabilities_of(DensityMatrix(ComplexMatrix::Identity(3, 3) / 3.0), f), DimensionError);
}

TEST_CASE("tomography reconstructs states") {
  const FiducialSet f = build_fiducial_set(2);
  const Reconstruction e0 = tomography_reconstruct(Eigen::Vector4d(1.0, 0.0, 0.5, 0.5), f);
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK((e0.rho - expected).norm() < 1e-10);
  CHECK(e0.physical);

  const Reconstruction mixed = tomography_reconstruct(Eigen::Vector4d::Constant(0.5), f);
  CHECK((mixed.rho - ComplexMatrix::Identity(2, 2) / 2.0).norm() < 1e-12);

  Rng rng(10);
  for (std::size_t n : {2u, 3u, 4u}) {
    const FiducialSet fn = build_fiducial_set(n);
    for (int rep = 0; rep < 50; ++rep) {
      const DensityMatrix pure = DensityMatrix::pure(random_pure_state(n, rng));
      const RealVector p = probabilities_of(pure, fn);
      const Reconstruction rec = tomography_reconstruct(p, fn);
      REQUIRE((rec.rho - pure.matrix()).cwiseAbs().maxCoeff() < 1e-9);
      REQUIRE((probabilities_of(rec.rho, fn) - p).cwiseAbs().maxCoeff() < 1e-9);
      REQUIRE(std::abs(rec.trace - 1.0) < 1e-9);
    }
  }

  CHECK_THROWS_AS(tomography_reconstruct(Eigen::Vector3d(1, 0, 0), f), DimensionError);
}

TEST_CASE("inconsistent probabilities produce a diagnostic") {
  const FiducialSet f = build_fiducial_set(2);
  // Both basis outcomes certain at once: no state does that.
  const Reconstruction bad = tomography_reconstruct(Eigen::Vector4d(1.0, 1.0, 0.5, 0.5), f);
  CHECK_FALSE(bad.physical);
  CHECK_THROWS_AS(bad.state(), DomainError);

  // Trace one but not positive: sigma_x expectation beyond the Bloch ball.
  const Reconstruction outside = tomography_reconstruct(Eigen::Vector4d(0.5, 0.5, 1.2, 0.5), f);
  CHECK_FALSE(outside.physical);
  CHECK(outside.min_eigenvalue < -0.1);
}

TEST_CASE("reconstruction error scales with the frame condition number") {
  Rng rng(12);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  for (std::size_t n : {2u, 3u, 4u, 5u}) {
    const FiducialSet f = build_fiducial_set(n);
    for (int rep = 0; rep < 20; ++rep) {
      const ComplexMatrix rho = random_density_matrix(n, rng);
      const RealVector p = probabilities_of(rho, f);
      RealVector delta(p.size());
      for (Eigen::Index k = 0; k < delta.size(); ++k) delta(k) = 1e-6 * noise(rng);
      const Reconstruction rec = tomography_reconstruct(p + delta, f);
      // ||c|| <= cond * ||M c|| / s_max style bound, with ||rho||_F <= ||c||_2 sqrt(K) for unit projectors.
      const double bound = f.condition_number() * delta.norm() * std::sqrt(static_cast<double>(f.size()));
      REQUIRE((rec.rho - rho).norm() <= bound);
    }
  }
}

TEST_CASE("restricting to a support") {
  ComplexMatrix e0 = ComplexMatrix::Zero(3, 3);
  e0(0, 0) = 1.0;
  const DensityMatrix r0 = restrict_support(DensityMatrix(e0), {0, 1});
  CHECK(r0.matrix() == (ComplexMatrix(2, 2) << 1.0, 0.0, 0.0, 0.0).finished());

  ComplexMatrix half = ComplexMatrix::Zero(3, 3);
  half(0, 0) = half(1, 1) = 0.5;
  CHECK((restrict_support(DensityMatrix(half), {0, 1}).matrix() - ComplexMatrix::Identity(2, 2) / 2.0).norm() == 0.0);

  Rng rng(13);
  const Eigen::VectorXcd psi2 = random_pure_state(2, rng);
  Eigen::VectorXcd psi4 = Eigen::VectorXcd::Zero(4);
  psi4(0) = psi2(0);
  psi4(1) = psi2(1);
  const DensityMatrix embedded = DensityMatrix::pure(psi4);
  const DensityMatrix back = restrict_support(embedded, {0, 1});
  CHECK((back.matrix() - psi2 * psi2.adjoint()).norm() < 1e-14);

  // Probabilities of an observable living on the support are unchanged.
  const FiducialSet f2 = build_fiducial_set(2);
  for (std::size_t k = 0; k < f2.size(); ++k) {
    ComplexMatrix lifted = ComplexMatrix::Zero(4, 4);
    lifted.topLeftCorner(2, 2) = f2.projectors()[k];
    const double big = (embedded.matrix() * lifted).trace().real();
    const double small = (back.matrix() * f2.projectors()[k]).trace().real();
    REQUIRE(std::abs(big - small) < 1e-10);
  }

  CHECK_THROWS_AS(restrict_support(DensityMatrix(half), {0, 2}), SupportError);
  CHECK_THROWS_AS(restrict_support(DensityMatrix(half), {0, 5}), BoundsError);
}

TEST_CASE("density matrix invariants") {
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(2, 2)), DomainError);
  ComplexMatrix not_hermitian = ComplexMatrix::Identity(2, 2) / 2.0;
  not_hermitian(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{not_hermitian}, DomainError);
  ComplexMatrix negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, DomainError);
}
