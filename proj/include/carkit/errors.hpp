#pragma once

#include <stdexcept>
#include <string>

namespace carkit {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  ZeroProbabilityObservation,
  ZeroProbabilityEvent,
  InfeasibleGamma,
  SupportMismatch,
  SingularMatrix,
  InvalidParams,
  NotCar,
  UndefinedJeffrey,
  MixedPartitions,
  InfeasibleConstraints,
  NonPositivePrior,
  PreconditionViolated,
  UnknownScenario,
  InapplicableAnalysis,
};

const char* to_string(ErrorCode code);

class CarkitError : public std::runtime_error {
 public:
  CarkitError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for malformed input (files, arguments, names); false for a
  /// well-formed request whose operation is infeasible or undefined.
  bool is_input_error() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace carkit
