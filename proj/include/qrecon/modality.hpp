#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qrecon/linalg.hpp"

namespace qrecon {

inline constexpr double kDefaultValidationTol = 1e-9;

// N mutually exclusive outcomes of one measurement setting.
class ModalitySet {
public:
  // Labels "b_0" .. "b_{n-1}".
  explicit ModalitySet(std::size_t n);
  explicit ModalitySet(std::vector<std::string> labels);

  std::size_t dimension() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
  std::vector<std::string> labels_;
};

// Validated bistochastic matrix of transition probabilities between two
// modality sets. Only obtainable through validate_bistochastic.
class ProbabilityMatrix {
public:
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(p_.rows()); }
  const RealMatrix& values() const noexcept { return p_; }
  double operator()(std::size_t i, std::size_t j) const {
    return p_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const std::optional<ModalitySet>& source() const noexcept { return source_; }
  const std::optional<ModalitySet>& target() const noexcept { return target_; }

  friend bool operator==(const ProbabilityMatrix& a, const ProbabilityMatrix& b);

private:
  friend ProbabilityMatrix validate_bistochastic(const RealMatrix&, double, std::optional<ModalitySet>,
                                                 std::optional<ModalitySet>);
  ProbabilityMatrix(RealMatrix p, std::optional<ModalitySet> source, std::optional<ModalitySet> target)
      : p_(std::move(p)), source_(std::move(source)), target_(std::move(target)) {}

  RealMatrix p_;
  std::optional<ModalitySet> source_;
  std::optional<ModalitySet> target_;
};

// Checks, in order: squareness, finiteness, entry range, row sums, column
// sums. Throws ValidationError naming the first violation. Entries are kept
// as given; nothing is renormalized.
ProbabilityMatrix validate_bistochastic(const RealMatrix& p, double tol = kDefaultValidationTol,
                                        std::optional<ModalitySet> source = std::nullopt,
                                        std::optional<ModalitySet> target = std::nullopt);

inline ProbabilityMatrix validate_bistochastic(const ProbabilityMatrix& p,
                                               double tol = kDefaultValidationTol) {
  return validate_bistochastic(p.values(), tol, p.source(), p.target());
}

// (n - 1)^2 free parameters left after the row and column normalizations.
std::size_t independent_parameter_count(std::size_t n);

// The 2n x n^2 system stacking every row-sum and column-sum constraint.
RealMatrix normalization_constraints(std::size_t n);

// Numerical rank of normalization_constraints(n); equals 2n - 1.
std::size_t normalization_constraint_rank(std::size_t n);

}  // namespace qrecon
