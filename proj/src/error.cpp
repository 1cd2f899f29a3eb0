#include "netdelay/error.hpp"

namespace netdelay {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SizeConflict: return "SizeConflict";
    case ErrorCode::NonPositiveSlope: return "NonPositiveSlope";
    case ErrorCode::DegenerateSizes: return "DegenerateSizes";
    case ErrorCode::NegativeResult: return "NegativeResult";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::ZeroExpected: return "ZeroExpected";
    case ErrorCode::TraceTooShort: return "TraceTooShort";
    case ErrorCode::UnrecognizedFormat: return "UnrecognizedFormat";
    case ErrorCode::MissingSize: return "MissingSize";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::RowError: return "RowError";
    case ErrorCode::EmptySchedule: return "EmptySchedule";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnrecognizedFormat:
    case ErrorCode::MissingSize:
    case ErrorCode::SchemaMismatch:
    case ErrorCode::RowError:
    case ErrorCode::EmptyTrace:
    case ErrorCode::InvalidArgument:
      return true;
    default:
      return false;
  }
}

}  // namespace netdelay
