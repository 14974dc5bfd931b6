#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spce {

enum class ErrorKind {
  DegreeOverflow,
  InvalidInput,
  DimensionMismatch,
  InvalidTruncation,
  RankDeficient,
  SaturatedLeverage,
  DegenerateOutput,
  NonFiniteCorrelation,
  InvalidParent,
  OutOfSupport,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `kind()` identifies the failure class; `detail()`
/// carries an optional integer payload (numerical rank for RankDeficient,
/// offending row for SaturatedLeverage, line number for ParseError).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, long detail = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  long detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  long detail_;
};

}  // namespace spce
