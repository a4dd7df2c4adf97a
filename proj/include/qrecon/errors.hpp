#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qrecon {

// Shape mismatch or non-square input where a square one is required.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class BoundsError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

// Argument outside the mathematical domain of an operation (n = 0 and friends).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class GroupError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class RepresentationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SupportError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ReconstructionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// First violated constraint found while validating a probability matrix.
enum class Violation {
  NotSquare,
  NonFinite,
  NegativeEntry,
  EntryAboveOne,
  RowSum,
  ColumnSum,
};

const char* to_string(Violation v) noexcept;

class ValidationError : public std::invalid_argument {
public:
  ValidationError(Violation violation, std::size_t row, std::size_t col, double deficit);

  Violation violation() const noexcept { return violation_; }
  // For RowSum only row() is meaningful, for ColumnSum only col().
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }
  // Signed amount by which the constraint is missed (1 - sum for sums,
  // the offending value for entry-range violations).
  double deficit() const noexcept { return deficit_; }

private:
  Violation violation_;
  std::size_t row_;
  std::size_t col_;
  double deficit_;
};

}  // namespace qrecon
