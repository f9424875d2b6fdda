#include "carkit/errors.hpp"

namespace carkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroProbabilityObservation: return "ZeroProbabilityObservation";
    case ErrorCode::ZeroProbabilityEvent: return "ZeroProbabilityEvent";
    case ErrorCode::InfeasibleGamma: return "InfeasibleGamma";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NotCar: return "NotCar";
    case ErrorCode::UndefinedJeffrey: return "UndefinedJeffrey";
    case ErrorCode::MixedPartitions: return "MixedPartitions";
    case ErrorCode::InfeasibleConstraints: return "InfeasibleConstraints";
    case ErrorCode::NonPositivePrior: return "NonPositivePrior";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::InapplicableAnalysis: return "InapplicableAnalysis";
  }
  return "Unknown";
}

bool CarkitError::is_input_error() const noexcept {
  switch (code_) {
    case ErrorCode::InvalidInput:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::UnknownScenario:
      return true;
    default:
      return false;
  }
}

}  // namespace carkit
