#include "qrecon/errors.hpp"

#include <sstream>

namespace qrecon {

const char* to_string(Violation v) noexcept {
  switch (v) {
    case Violation::NotSquare: return "not_square";
    case Violation::NonFinite: return "non_finite";
    case Violation::NegativeEntry: return "negative_entry";
    case Violation::EntryAboveOne: return "entry_above_one";
    case Violation::RowSum: return "row_sum";
    case Violation::ColumnSum: return "column_sum";
  }
  return "unknown";
}

namespace {

std::string describe(Violation v, std::size_t row, std::size_t col, double deficit) {
  std::ostringstream os;
  os.precision(17);
  switch (v) {
    case Violation::RowSum:
      os << "row " << row << " sums to " << 1.0 - deficit;
      break;
    case Violation::ColumnSum:
      os << "column " << col << " sums to " << 1.0 - deficit;
      break;
    case Violation::NotSquare:
      os << "matrix is not square";
      break;
    default:
      os << to_string(v) << " at (" << row << ", " << col << "): " << deficit;
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(Violation violation, std::size_t row, std::size_t col, double deficit)
    : std::invalid_argument(describe(violation, row, col, deficit)),
      violation_(violation),
      row_(row),
      col_(col),
      deficit_(deficit) {}

}  // namespace qrecon
