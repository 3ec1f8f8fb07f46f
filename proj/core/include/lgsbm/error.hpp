#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lgsbm {

enum class ErrorCode {
  ZeroQ,
  ShapeMismatch,
  NonStochasticAlpha,
  AsymmetricPi,
  OutOfRangePi,
  InvalidGraph,
  TooFewNodes,
  DegreeOutOfRange,
  QTooLarge,
  AssumptionAViolated,
  LabelOutOfRange,
  LengthMismatch,
  BetaOutOfRange,
  GroupTooSmall,
  NonpositiveT,
  TOutOfRange,
  ParamOutOfRange,
  ParseError,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed input file. `line` is 1-based; 0 means the failure is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace lgsbm
