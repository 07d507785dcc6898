#pragma once

#include <stdexcept>
#include <string>

namespace desoc {

enum class ErrorCode {
  DegenerateOrbit,
  RetrogradeSingularity,
  KeplerNonConvergence,
  NonPositiveMass,
  WindowOutsideHorizon,
  DimensionMismatch,
  NumericFailure,
  InfeasibleStall,
  ShootingNonConvergence,
  InvalidArgument,
  SchemaError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception type thrown by every desoc module. `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace desoc
