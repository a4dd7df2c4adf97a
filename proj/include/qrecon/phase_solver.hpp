#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "qrecon/linalg.hpp"
#include "qrecon/modality.hpp"

namespace qrecon {

// Wraps an angle into (-pi, pi].
double wrap_phase(double angle) noexcept;

// Phases phi_ij in canonical gauge: first row and first column are zero and
// every value lies in (-pi, pi].
class PhaseMatrix {
public:
  // Throws DomainError unless phi is already canonical (use gauge_fix otherwise).
  explicit PhaseMatrix(RealMatrix phi);
  // All-zero phases of dimension n.
  static PhaseMatrix zeros(std::size_t n);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(phi_.rows()); }
  const RealMatrix& values() const noexcept { return phi_; }
  double operator()(std::size_t i, std::size_t j) const {
    return phi_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  friend bool operator==(const PhaseMatrix& a, const PhaseMatrix& b) {
    return a.phi_.rows() == b.phi_.rows() && a.phi_ == b.phi_;
  }

private:
  RealMatrix phi_;
};

// Quotient by left/right diagonal phase multiplication:
// phi'_ij = phi_ij - phi_i0 - phi_0j + phi_00, wrapped into (-pi, pi].
PhaseMatrix gauge_fix(const RealMatrix& raw);

// Phases (argument of each entry) of a complex matrix, gauge fixed. Entries
// with modulus below zero_tol carry no phase information and are set to 0
// before fixing.
PhaseMatrix gauge_fix_phases_of(const ComplexMatrix& m, double zero_tol = 1e-12);

RealMatrix sqrt_matrix(const ProbabilityMatrix& pi);

// Entrywise e^{i phi_ij} sigma_ij.
ComplexMatrix apply_phases(const RealMatrix& sigma, const RealMatrix& phi);
inline ComplexMatrix apply_phases(const RealMatrix& sigma, const PhaseMatrix& phi) {
  return apply_phases(sigma, phi.values());
}

enum class SolveStatus { Feasible, Infeasible, Inconclusive };
std::string_view to_string(SolveStatus s) noexcept;

enum class PairAxis { Row, Column };
std::string_view to_string(PairAxis a) noexcept;

// Pair of rows (or columns) whose links cannot close a triangle.
struct ObstructionPair {
  PairAxis axis;
  std::size_t first;
  std::size_t second;
  // max link minus the sum of the other two; positive means obstructed.
  double gap;

  friend bool operator==(const ObstructionPair&, const ObstructionPair&) = default;
};

struct N3Certificate {
  bool feasible;
  std::optional<ObstructionPair> obstruction;
};

// Exact unistochasticity test for 3x3 bistochastic matrices. For a pair of
// rows the three links sqrt(p_ak p_bk) must close a triangle, i.e. the
// largest is no longer than the sum of the other two (plus tol).
// Rows are examined before columns; the first failing pair is reported.
N3Certificate certify_n3(const ProbabilityMatrix& pi, double tol = 1e-9);

struct SolverConfig {
  double tol = kDefaultUnitaryTol;
  std::size_t max_iter = 500;
  std::size_t starts = 32;
  std::uint64_t seed = 0;
  // Worker threads for the multi-start loop; 0 picks hardware concurrency.
  // Never affects the report.
  std::size_t threads = 1;

  // Throws ConfigError on zero starts, zero iterations or a nonpositive tol.
  void validate() const;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Inconclusive;
  std::optional<PhaseMatrix> phases;
  double residual = 0.0;
  std::size_t starts_used = 0;
  std::size_t iterations_total = 0;
  std::uint64_t seed = 0;
  // Index of the start that produced the best residual.
  std::size_t best_start = 0;
  std::optional<ObstructionPair> obstruction;

  friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

// Closed-form unitary completion for N = 2: phases [[0,0],[0,pi]].
SolveReport solve_phases_closed_form_n2(const ProbabilityMatrix& pi);

// Multi-start damped least squares over the (N-1)^2 interior phases.
// Start 0 is the all-zero phase point, the others draw uniform phases from
// a seed derived from (cfg.seed, start index). The best start is chosen by
// (residual, start index).
SolveReport solve_phases(const ProbabilityMatrix& pi, const SolverConfig& cfg = {});

// Objective f(phi) = ||S(phi)^dagger S(phi) - I||_F^2 and its gradient with
// respect to the interior phases phi_ij, i, j >= 1, packed row-major.
namespace objective {

std::size_t parameter_count(std::size_t n);
RealMatrix unpack(const RealVector& x, std::size_t n);
RealVector pack(const RealMatrix& phi);

double value(const RealMatrix& sigma, const RealVector& x);
RealVector gradient(const RealMatrix& sigma, const RealVector& x);

// Real residual vector r with ||r||^2 = f and its Jacobian. Rows hold the
// diagonal (phase independent) entries of the Gram matrix followed by
// sqrt(2) Re/Im of each strictly upper entry.
RealVector residuals(const RealMatrix& sigma, const RealVector& x);
RealMatrix jacobian(const RealMatrix& sigma, const RealVector& x);

}  // namespace objective

}  // namespace qrecon
