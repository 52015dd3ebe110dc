#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radau {

enum class ErrorCode {
  SingularMatrix,
  ZeroPivot,
  NoConvergence,
  NonMonotonic,
  Unsupported,
  PivotMismatch,
  DimensionMismatch,
  NonFinite,
  NewtonDiverged,
  StepSizeUnderflow,
  SingularShift,
  UnknownProblem,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ZeroPivot: return "ZeroPivot";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonMonotonic: return "NonMonotonic";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::PivotMismatch: return "PivotMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::SingularShift: return "SingularShift";
    case ErrorCode::UnknownProblem: return "UnknownProblem";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace radau
