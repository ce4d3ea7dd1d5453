#include "fitbench/errors.hpp"

namespace fitbench {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownServer: return "UnknownServer";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::NotAParameter: return "NotAParameter";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::UnsetObservable: return "UnsetObservable";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::BatchUnsupported: return "BatchUnsupported";
    case ErrorCode::NonPositiveSigma: return "NonPositiveSigma";
    case ErrorCode::NegativeLambda: return "NegativeLambda";
    case ErrorCode::NegativeK: return "NegativeK";
    case ErrorCode::CoefficientOutOfRange: return "CoefficientOutOfRange";
    case ErrorCode::NegativeDensity: return "NegativeDensity";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotAnObservable: return "NotAnObservable";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::MalformedNumber: return "MalformedNumber";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::DegenerateDensity: return "DegenerateDensity";
    case ErrorCode::MultipleObservables: return "MultipleObservables";
    case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::BinMismatch: return "BinMismatch";
    case ErrorCode::NegativeBinContent: return "NegativeBinContent";
    case ErrorCode::DegenerateModel: return "DegenerateModel";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "UnknownError";
}

}  // namespace fitbench
