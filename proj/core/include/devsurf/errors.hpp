#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace devsurf {

enum class ErrorCode {
  InvalidArgument,
  InvalidCurve,
  ParameterOutOfRange,
  ParallelLinePlane,
  DegenerateOsculatingPlane,
  UnclampedKnotVector,
  IdenticallyZeroPolynomial,
  SingularDenominator,
  DegenerateRuling,
  DegenerateNormal,
  NoRealRootOnSlice,
  EventLocalizationFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type for every failure raised by the library. The code is the
/// machine-readable part; what() carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace devsurf
