#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcorr {

enum class ErrorCode {
  NotHermitian,
  NotUnitTrace,
  NotPositive,
  BadDims,
  NotUnit,
  NotOrthonormal,
  DimMismatch,
  BadAngleCount,
  ObjectiveNaN,
  Infeasible,
  BadSpec,
  SchemaError,
  InvariantError,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library surfaces as this exception. `magnitude` carries
// the size of the violated invariant when one applies (0 otherwise).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, double magnitude = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        magnitude_(magnitude) {}

  ErrorCode code() const noexcept { return code_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitTrace: return "NotUnitTrace";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::BadDims: return "BadDims";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::BadAngleCount: return "BadAngleCount";
    case ErrorCode::ObjectiveNaN: return "ObjectiveNaN";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvariantError: return "InvariantError";
  }
  return "Unknown";
}

}  // namespace qcorr
