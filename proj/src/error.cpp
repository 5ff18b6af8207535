#include "gsee/error.hpp"

namespace gsee {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingHeaderField: return "MissingHeaderField";
    case ErrorCode::InvalidHeader: return "InvalidHeader";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::ConflictingDuplicate: return "ConflictingDuplicate";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::DuplicateTaskUuid: return "DuplicateTaskUuid";
    case ErrorCode::DuplicateInstanceUuid: return "DuplicateInstanceUuid";
    case ErrorCode::TaskMismatch: return "TaskMismatch";
    case ErrorCode::InvalidOccupation: return "InvalidOccupation";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InsufficientRows: return "InsufficientRows";
    case ErrorCode::InconsistentBasis: return "InconsistentBasis";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooManyFeatures: return "TooManyFeatures";
    case ErrorCode::EmptyCatalog: return "EmptyCatalog";
    case ErrorCode::InsufficientLabels: return "InsufficientLabels";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace gsee
