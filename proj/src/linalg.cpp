#include "qrecon/linalg.hpp"

#include <cmath>
#include <string>

#include "qrecon/errors.hpp"

namespace qrecon {

namespace {

void require_square(Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (rows != cols || rows == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_index(std::size_t idx, Eigen::Index n, const char* what) {
  if (idx >= static_cast<std::size_t>(n)) {
    throw BoundsError(std::string(what) + ": index " + std::to_string(idx) +
                      " out of range for dimension " + std::to_string(n));
  }
}

}  // namespace

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const Complex z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool all_finite(const RealMatrix& m) { return m.allFinite(); }

Projector::Projector(std::size_t dimension, std::size_t index) : dimension_(dimension), index_(index) {
  if (dimension == 0) throw DomainError("projector dimension must be positive");
  if (index >= dimension) {
    throw BoundsError("projector index " + std::to_string(index) + " out of range for dimension " +
                      std::to_string(dimension));
  }
}

ComplexMatrix Projector::matrix() const {
  const auto n = static_cast<Eigen::Index>(dimension_);
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  p(static_cast<Eigen::Index>(index_), static_cast<Eigen::Index>(index_)) = 1.0;
  return p;
}

double unitarity_residual(const ComplexMatrix& m) {
  require_square(m.rows(), m.cols(), "unitarity_residual");
  const ComplexMatrix gram = m.adjoint() * m;
  return (gram - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
}

double extract_probability(const ComplexMatrix& sigma_tilde, std::size_t i, std::size_t j) {
  require_square(sigma_tilde.rows(), sigma_tilde.cols(), "extract_probability");
  require_index(i, sigma_tilde.rows(), "extract_probability");
  require_index(j, sigma_tilde.rows(), "extract_probability");
  const auto n = static_cast<std::size_t>(sigma_tilde.rows());
  const ComplexMatrix pi = Projector(n, i).matrix();
  const ComplexMatrix pj = Projector(n, j).matrix();
  const ComplexMatrix sandwich = pi * sigma_tilde * pj * sigma_tilde.adjoint();
  return sandwich.trace().real();
}

double extract_probability_fast(const ComplexMatrix& sigma_tilde, std::size_t i, std::size_t j) {
  require_square(sigma_tilde.rows(), sigma_tilde.cols(), "extract_probability_fast");
  require_index(i, sigma_tilde.rows(), "extract_probability_fast");
  require_index(j, sigma_tilde.rows(), "extract_probability_fast");
  return std::norm(sigma_tilde(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
}

RealMatrix transition_probability_matrix(const ComplexMatrix& sigma_tilde) {
  require_square(sigma_tilde.rows(), sigma_tilde.cols(), "transition_probability_matrix");
  return sigma_tilde.cwiseAbs2();
}

ComplexMatrix transported_projector(const RealMatrix& sigma, std::size_t j, double tol) {
  require_square(sigma.rows(), sigma.cols(), "transported_projector");
  require_index(j, sigma.rows(), "transported_projector");
  if (!sigma.allFinite()) throw ValidationError(Violation::NonFinite, 0, 0, 0.0);
  const RealMatrix squared = sigma.cwiseAbs2();
  for (Eigen::Index r = 0; r < squared.rows(); ++r) {
    const double deficit = 1.0 - squared.row(r).sum();
    if (std::abs(deficit) > tol) {
      throw ValidationError(Violation::RowSum, static_cast<std::size_t>(r), 0, deficit);
    }
  }
  for (Eigen::Index c = 0; c < squared.cols(); ++c) {
    const double deficit = 1.0 - squared.col(c).sum();
    if (std::abs(deficit) > tol) {
      throw ValidationError(Violation::ColumnSum, 0, static_cast<std::size_t>(c), deficit);
    }
  }
  const ComplexMatrix s = sigma.cast<Complex>();
  const ComplexMatrix pj = Projector(static_cast<std::size_t>(sigma.rows()), j).matrix();
  return s * pj * s.transpose();
}

}  // namespace qrecon
