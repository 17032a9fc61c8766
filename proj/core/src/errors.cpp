#include "devsurf/errors.hpp"

namespace devsurf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::ParallelLinePlane: return "ParallelLinePlane";
    case ErrorCode::DegenerateOsculatingPlane: return "DegenerateOsculatingPlane";
    case ErrorCode::UnclampedKnotVector: return "UnclampedKnotVector";
    case ErrorCode::IdenticallyZeroPolynomial: return "IdenticallyZeroPolynomial";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::DegenerateRuling: return "DegenerateRuling";
    case ErrorCode::DegenerateNormal: return "DegenerateNormal";
    case ErrorCode::NoRealRootOnSlice: return "NoRealRootOnSlice";
    case ErrorCode::EventLocalizationFailure: return "EventLocalizationFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace devsurf
