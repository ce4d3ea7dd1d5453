#pragma once

#include <stdexcept>
#include <string>

namespace fitbench {

// Stable error codes used across the library. CLI maps any of these to
// exit code 2 unless documented otherwise.
enum class ErrorCode {
  // graph
  DuplicateName,
  UnknownServer,
  CycleDetected,
  NotAParameter,
  OutOfBounds,
  UnsetObservable,
  UnknownNode,
  BatchUnsupported,
  // pdf kernels
  NonPositiveSigma,
  NegativeLambda,
  NegativeK,
  CoefficientOutOfRange,
  NegativeDensity,
  LengthMismatch,
  InvalidRange,
  // data
  IndexOutOfRange,
  NotAnObservable,
  MissingColumn,
  MalformedNumber,
  EmptyFile,
  DegenerateDensity,
  MultipleObservables,
  // likelihood
  NonPositiveDensity,
  // histfactory
  SchemaError,
  BinMismatch,
  NegativeBinContent,
  DegenerateModel,
  // cli / io
  IoError,
  UnknownModel,
  UsageError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace fitbench
