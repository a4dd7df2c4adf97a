#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qrecon {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultUnitaryTol = 1e-10;

bool all_finite(const ComplexMatrix& m);
bool all_finite(const RealMatrix& m);

// Diagonal projector onto the i-th exclusive outcome of an N-outcome setting.
class Projector {
public:
  Projector(std::size_t dimension, std::size_t index);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t index() const noexcept { return index_; }

  ComplexMatrix matrix() const;

private:
  std::size_t dimension_;
  std::size_t index_;
};

// Frobenius norm of m^dagger m - I. Throws DimensionError for non-square m.
double unitarity_residual(const ComplexMatrix& m);

inline bool is_unitary(const ComplexMatrix& m, double tol = kDefaultUnitaryTol) {
  return unitarity_residual(m) < tol;
}

// Trace(P_i S P_j S^dagger), evaluated literally with materialized projectors.
double extract_probability(const ComplexMatrix& sigma_tilde, std::size_t i, std::size_t j);

// Same quantity through the shortcut |S_ij|^2.
double extract_probability_fast(const ComplexMatrix& sigma_tilde, std::size_t i, std::size_t j);

// Entrywise transition probabilities p_ij = |S_ij|^2. Bistochastic whenever
// sigma_tilde is unitary; no validation is performed here.
RealMatrix transition_probability_matrix(const ComplexMatrix& sigma_tilde);

// P_j' = S P_j S^T for the real square-root matrix S of a probability matrix.
// Each P_j' is a trace-one idempotent, but the family is in general not
// mutually orthogonal. Throws ValidationError if the squared rows or columns
// of sigma do not sum to one within tol.
ComplexMatrix transported_projector(const RealMatrix& sigma, std::size_t j, double tol = 1e-9);

}  // namespace qrecon
