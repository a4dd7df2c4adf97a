#include "qrecon/hardy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qrecon/errors.hpp"

namespace qrecon {

namespace {

// n^r, or nullopt on overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t n, unsigned r) {
  std::uint64_t acc = 1;
  for (unsigned k = 0; k < r; ++k) {
    if (acc > std::numeric_limits<std::uint64_t>::max() / n) return std::nullopt;
    acc *= n;
  }
  return acc;
}

std::optional<unsigned> exact_log(std::uint64_t n, std::uint64_t k) {
  unsigned r = 0;
  std::uint64_t acc = 1;
  while (acc < k) {
    if (acc > std::numeric_limits<std::uint64_t>::max() / n) return std::nullopt;
    acc *= n;
    ++r;
  }
  if (acc != k) return std::nullopt;
  return r;
}

}  // namespace

std::string_view to_string(TheoryKind k) noexcept { return k == TheoryKind::Classical ? "classical" : "quantum"; }

TheoryKind parse_theory_kind(std::string_view s) {
  if (s == "classical") return TheoryKind::Classical;
  if (s == "quantum") return TheoryKind::Quantum;
  throw DomainError("unknown theory kind: " + std::string(s));
}

std::uint64_t capacity(TheoryKind kind, std::uint64_t n) {
  if (n == 0) throw DomainError("capacity: dimension must be at least 1");
  if (kind == TheoryKind::Classical) return n;
  if (n > std::numeric_limits<std::uint32_t>::max()) throw DomainError("capacity: N^2 overflows");
  return n * n;
}

CompositeCounts composite_counts(std::uint64_t n_a, std::uint64_t n_b, TheoryKind kind) {
  const std::uint64_t ka = capacity(kind, n_a);
  const std::uint64_t kb = capacity(kind, n_b);
  const std::uint64_t n = n_a * n_b;
  const std::uint64_t k = ka * kb;
  return {n, k, k == capacity(kind, n)};
}

PowerLaw infer_power(const std::vector<std::uint64_t>& ns, const std::vector<std::uint64_t>& ks) {
  if (ns.size() != ks.size()) throw DomainError("infer_power: ns and ks differ in length");
  if (ns.empty()) throw DomainError("infer_power: no data");
  for (std::uint64_t n : ns) {
    if (n < 2) throw DomainError("infer_power: every n must be at least 2");
  }
  const auto r = exact_log(ns[0], ks[0]);
  if (!r) return {std::nullopt, 0};
  for (std::size_t i = 1; i < ns.size(); ++i) {
    const auto expected = checked_pow(ns[i], *r);
    if (!expected || *expected != ks[i]) return {std::nullopt, i};
  }
  return {*r, std::nullopt};
}

std::vector<ComplexMatrix> self_adjoint_basis(std::size_t n) {
  if (n == 0) throw DomainError("self_adjoint_basis: dimension must be positive");
  const auto dim = static_cast<Eigen::Index>(n);
  const double h = 1.0 / std::numbers::sqrt2;
  std::vector<ComplexMatrix> basis;
  basis.reserve(n * n);
  for (Eigen::Index i = 0; i < dim; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      ComplexMatrix re = ComplexMatrix::Zero(dim, dim);
      re(i, j) = re(j, i) = h;
      basis.push_back(std::move(re));
      ComplexMatrix im = ComplexMatrix::Zero(dim, dim);
      im(i, j) = Complex(0.0, -h);
      im(j, i) = Complex(0.0, h);
      basis.push_back(std::move(im));
    }
  }
  return basis;
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) throw DimensionError("density matrix must be square");
  if (!all_finite(rho_)) throw DomainError("density matrix has non-finite entries");
  if ((rho_ - rho_.adjoint()).norm() > 1e-12) throw DomainError("density matrix is not self-adjoint");
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > 1e-12) throw DomainError("density matrix trace is not 1");
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) throw DomainError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw DomainError("pure state vector must be nonzero");
  const Eigen::VectorXcd unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint());
}

FiducialSet::FiducialSet(std::size_t n) : n_(n) {
  if (n == 0) throw DomainError("fiducial set dimension must be positive");
  const auto dim = static_cast<Eigen::Index>(n);
  auto ket_projector = [](const Eigen::VectorXcd& v) -> ComplexMatrix { return v * v.adjoint(); };
  for (Eigen::Index i = 0; i < dim; ++i) {
    projectors_.push_back(ket_projector(Eigen::VectorXcd::Unit(dim, i)));
  }
  const double h = 1.0 / std::numbers::sqrt2;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(dim);
      plus(i) = h;
      plus(j) = h;
      projectors_.push_back(ket_projector(plus));
      Eigen::VectorXcd twisted = Eigen::VectorXcd::Zero(dim);
      twisted(i) = h;
      twisted(j) = Complex(0.0, h);
      projectors_.push_back(ket_projector(twisted));
    }
  }
  const auto k = static_cast<Eigen::Index>(projectors_.size());
  frame_.resize(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      frame_(a, b) = (projectors_[static_cast<std::size_t>(a)] * projectors_[static_cast<std::size_t>(b)])
                         .trace()
                         .real();
    }
  }
  const Eigen::JacobiSVD<RealMatrix> svd(frame_);
  const auto& s = svd.singularValues();
  condition_ = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
  lu_.compute(frame_);
  if (!lu_.isInvertible() || !std::isfinite(condition_)) {
    throw ReconstructionError("fiducial frame matrix is singular");
  }
}

RealVector FiducialSet::solve_frame(const RealVector& p) const {
  if (static_cast<std::size_t>(p.size()) != size()) {
    throw DimensionError("expected " + std::to_string(size()) + " probabilities, got " + std::to_string(p.size()));
  }
  return lu_.solve(p);
}

FiducialSet build_fiducial_set(std::size_t n) { return FiducialSet(n); }

RealVector probabilities_of(const ComplexMatrix& rho, const FiducialSet& f) {
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != f.dimension()) {
    throw DimensionError("state and fiducial set differ in dimension");
  }
  RealVector p(static_cast<Eigen::Index>(f.size()));
  for (std::size_t k = 0; k < f.size(); ++k) {
    p(static_cast<Eigen::Index>(k)) = (rho * f.projectors()[k]).trace().real();
  }
  return p;
}

RealVector probabilities_of(const DensityMatrix& rho, const FiducialSet& f) {
  return probabilities_of(rho.matrix(), f);
}

Reconstruction tomography_reconstruct(const RealVector& p, const FiducialSet& f) {
  if (!p.allFinite()) throw ReconstructionError("probabilities must be finite");
  const RealVector c = f.solve_frame(p);
  if (!c.allFinite()) throw ReconstructionError("frame solve produced non-finite coefficients");
  const auto dim = static_cast<Eigen::Index>(f.dimension());
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < f.size(); ++k) rho += c(static_cast<Eigen::Index>(k)) * f.projectors()[k];
  rho = 0.5 * (rho + rho.adjoint()).eval();

  Reconstruction out;
  out.trace = rho.trace().real();
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  out.physical = std::abs(out.trace - 1.0) <= 1e-9 && out.min_eigenvalue >= -1e-10;
  out.rho = std::move(rho);
  return out;
}

DensityMatrix restrict_support(const DensityMatrix& rho, const std::vector<std::size_t>& support) {
  const std::size_t n = rho.dimension();
  if (support.empty()) throw SupportError("support must not be empty");
  std::vector<bool> inside(n, false);
  for (std::size_t idx : support) {
    if (idx >= n) throw BoundsError("support index " + std::to_string(idx) + " out of range");
    if (inside[idx]) throw SupportError("support index " + std::to_string(idx) + " repeated");
    inside[idx] = true;
  }
  const ComplexMatrix& m = rho.matrix();
  double outside = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!inside[i]) outside += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  if (outside >= 1e-10) {
    throw SupportError("state has weight " + std::to_string(outside) + " outside the support");
  }
  const auto dim = static_cast<Eigen::Index>(support.size());
  ComplexMatrix block(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      block(a, b) = m(static_cast<Eigen::Index>(support[static_cast<std::size_t>(a)]),
                      static_cast<Eigen::Index>(support[static_cast<std::size_t>(b)]));
    }
  }
  const double trace = block.trace().real();
  if (!(trace > 0.0)) throw SupportError("state has no weight on the support");
  return DensityMatrix(block / trace);
}

}  // namespace qrecon
