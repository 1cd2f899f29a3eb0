#pragma once

#include <stdexcept>
#include <string>

namespace netdelay {

enum class ErrorCode {
  // model
  SizeConflict,
  NonPositiveSlope,
  DegenerateSizes,
  NegativeResult,
  NonPositiveScale,
  InsufficientSamples,
  // dist
  InvalidProbability,
  // stats
  EmptyTrace,
  DegenerateVariance,
  TooFewSamples,
  ZeroExpected,
  TraceTooShort,
  // ingest
  UnrecognizedFormat,
  MissingSize,
  SchemaMismatch,
  RowError,
  // generate
  EmptySchedule,
  // argument outside a documented domain (size 0, negative interval, ...)
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

// Input/parse class errors map to CLI exit code 2, everything else to 3.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace netdelay
