#include "desoc/error.hpp"

namespace desoc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateOrbit: return "DegenerateOrbit";
    case ErrorCode::RetrogradeSingularity: return "RetrogradeSingularity";
    case ErrorCode::KeplerNonConvergence: return "KeplerNonConvergence";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::WindowOutsideHorizon: return "WindowOutsideHorizon";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NumericFailure: return "NumericFailure";
    case ErrorCode::InfeasibleStall: return "InfeasibleStall";
    case ErrorCode::ShootingNonConvergence: return "ShootingNonConvergence";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace desoc
