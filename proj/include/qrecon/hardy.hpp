#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qrecon/linalg.hpp"

namespace qrecon {

enum class TheoryKind { Classical, Quantum };
std::string_view to_string(TheoryKind k) noexcept;
// Parses "classical" / "quantum"; DomainError otherwise.
TheoryKind parse_theory_kind(std::string_view s);

// Number of probabilities K needed to fix a state of an N-outcome system:
// N classically, N^2 quantum mechanically.
std::uint64_t capacity(TheoryKind kind, std::uint64_t n);

struct CompositeCounts {
  std::uint64_t n;  // nA * nB
  std::uint64_t k;  // K(nA) * K(nB)
  // k == capacity(kind, n)
  bool consistent;
};

CompositeCounts composite_counts(std::uint64_t n_a, std::uint64_t n_b, TheoryKind kind);

struct PowerLaw {
  // Set when every pair satisfies k = n^r.
  std::optional<unsigned> exponent;
  // Index of the first pair that breaks the power law.
  std::optional<std::size_t> failing_pair;
};

// Exact integer fit of k = n^r. Mismatched lengths, empty input or n < 2
// throw DomainError; inconsistent data is reported, not thrown.
PowerLaw infer_power(const std::vector<std::uint64_t>& ns, const std::vector<std::uint64_t>& ks);

// Orthonormal basis of N x N self-adjoint matrices under the real
// Hilbert-Schmidt inner product; it always has N^2 elements.
std::vector<ComplexMatrix> self_adjoint_basis(std::size_t n);

// Trace-one self-adjoint positive matrix.
class DensityMatrix {
public:
  // Throws DomainError unless rho is self-adjoint (1e-12), has unit trace
  // (1e-12) and no eigenvalue below -1e-10.
  explicit DensityMatrix(ComplexMatrix rho);

  static DensityMatrix pure(const Eigen::VectorXcd& psi);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }

private:
  ComplexMatrix rho_;
};

// K = N^2 rank-one projectors onto e_i and, for every i < j, onto
// (e_i + e_j)/sqrt(2) and (e_i + i e_j)/sqrt(2), with their frame matrix
// M_kl = Trace(Pi_k Pi_l).
class FiducialSet {
public:
  explicit FiducialSet(std::size_t n);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return projectors_.size(); }
  const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
  const RealMatrix& frame() const noexcept { return frame_; }
  double condition_number() const noexcept { return condition_; }

  // Coefficients c with M c = p.
  RealVector solve_frame(const RealVector& p) const;

private:
  std::size_t n_;
  std::vector<ComplexMatrix> projectors_;
  RealMatrix frame_;
  double condition_;
  Eigen::FullPivLU<RealMatrix> lu_;
};

FiducialSet build_fiducial_set(std::size_t n);

// p_k = Trace(rho Pi_k).
RealVector probabilities_of(const DensityMatrix& rho, const FiducialSet& f);
RealVector probabilities_of(const ComplexMatrix& rho, const FiducialSet& f);

// Result of linear tomography. `rho` is always self-adjoint; when the input
// probabilities are not those of a physical state, `physical` is false and
// min_eigenvalue tells by how much positivity fails.
struct Reconstruction {
  ComplexMatrix rho;
  double trace;
  double min_eigenvalue;
  bool physical;

  // Throws DomainError if the reconstruction is not a valid density matrix.
  DensityMatrix state() const { return DensityMatrix(rho); }
};

Reconstruction tomography_reconstruct(const RealVector& p, const FiducialSet& f);

// M x M principal block on `support`, renormalized. Throws SupportError if
// the weight outside the support is 1e-10 or more.
DensityMatrix restrict_support(const DensityMatrix& rho, const std::vector<std::size_t>& support);

}  // namespace qrecon
