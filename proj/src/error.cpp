#include "spce/error.hpp"

namespace spce {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidTruncation: return "InvalidTruncation";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::SaturatedLeverage: return "SaturatedLeverage";
    case ErrorKind::DegenerateOutput: return "DegenerateOutput";
    case ErrorKind::NonFiniteCorrelation: return "NonFiniteCorrelation";
    case ErrorKind::InvalidParent: return "InvalidParent";
    case ErrorKind::OutOfSupport: return "OutOfSupport";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace spce
