#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specrig {

enum class ErrorCode {
  InvalidInput,
  NonFinite,
  NonConvergence,
  DegreeCapExceeded,
  DegenerateMap,
  DegenerateParameter,
  NotPeriodic,
  NearParabolic,
  ShapeMismatch,
  InsufficientMarkers,
  SingularCurve,
  DerivativeVanishes,
  DerivativeTooSmall,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::DegenerateMap: return "DegenerateMap";
    case ErrorCode::DegenerateParameter: return "DegenerateParameter";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::NearParabolic: return "NearParabolic";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InsufficientMarkers: return "InsufficientMarkers";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorCode::DerivativeTooSmall: return "DerivativeTooSmall";
  }
  return "Unknown";
}

/// Numerical failures (as opposed to invalid input) map to CLI exit code 3.
constexpr bool is_numerical_failure(ErrorCode code) {
  return code == ErrorCode::NonConvergence || code == ErrorCode::DegreeCapExceeded ||
         code == ErrorCode::NonFinite || code == ErrorCode::DerivativeVanishes ||
         code == ErrorCode::DerivativeTooSmall || code == ErrorCode::NearParabolic;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace specrig
