#include "qrecon/modality.hpp"

#include <cmath>
#include <set>

#include "qrecon/errors.hpp"

namespace qrecon {

ModalitySet::ModalitySet(std::size_t n) {
  if (n == 0) throw DomainError("a modality set needs at least one outcome");
  labels_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels_.push_back("b_" + std::to_string(i));
}

ModalitySet::ModalitySet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw DomainError("a modality set needs at least one outcome");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw DomainError("duplicate modality label: " + l);
  }
}

bool operator==(const ProbabilityMatrix& a, const ProbabilityMatrix& b) {
  auto labels = [](const std::optional<ModalitySet>& m) {
    return m ? m->labels() : std::vector<std::string>{};
  };
  return a.p_.rows() == b.p_.rows() && a.p_ == b.p_ && labels(a.source_) == labels(b.source_) &&
         labels(a.target_) == labels(b.target_);
}

ProbabilityMatrix validate_bistochastic(const RealMatrix& p, double tol, std::optional<ModalitySet> source,
                                        std::optional<ModalitySet> target) {
  if (!(tol >= 0.0)) throw DomainError("validation tolerance must be nonnegative");
  if (p.rows() != p.cols() || p.rows() == 0) throw ValidationError(Violation::NotSquare, 0, 0, 0.0);
  const auto n = static_cast<std::size_t>(p.rows());
  if (source && source->dimension() != n) throw DimensionError("source labels do not match matrix dimension");
  if (target && target->dimension() != n) throw DimensionError("target labels do not match matrix dimension");

  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      const double v = p(i, j);
      const auto r = static_cast<std::size_t>(i);
      const auto c = static_cast<std::size_t>(j);
      if (!std::isfinite(v)) throw ValidationError(Violation::NonFinite, r, c, v);
      if (v < -tol) throw ValidationError(Violation::NegativeEntry, r, c, v);
      if (v > 1.0 + tol) throw ValidationError(Violation::EntryAboveOne, r, c, v);
    }
  }
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double deficit = 1.0 - p.row(i).sum();
    if (std::abs(deficit) > tol) throw ValidationError(Violation::RowSum, static_cast<std::size_t>(i), 0, deficit);
  }
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    const double deficit = 1.0 - p.col(j).sum();
    if (std::abs(deficit) > tol) {
      throw ValidationError(Violation::ColumnSum, 0, static_cast<std::size_t>(j), deficit);
    }
  }
  return ProbabilityMatrix(p, std::move(source), std::move(target));
}

std::size_t independent_parameter_count(std::size_t n) {
  if (n == 0) throw DomainError("dimension must be at least 1");
  return (n - 1) * (n - 1);
}

RealMatrix normalization_constraints(std::size_t n) {
  if (n == 0) throw DomainError("dimension must be at least 1");
  const auto dim = static_cast<Eigen::Index>(n);
  // Unknown p_ij sits at column i * n + j.
  RealMatrix a = RealMatrix::Zero(2 * dim, dim * dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      a(i, i * dim + j) = 1.0;
      a(dim + j, i * dim + j) = 1.0;
    }
  }
  return a;
}

std::size_t normalization_constraint_rank(std::size_t n) {
  const RealMatrix a = normalization_constraints(n);
  Eigen::JacobiSVD<RealMatrix> svd(a);
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? s(0) * 1e-10 : 0.0;
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace qrecon
