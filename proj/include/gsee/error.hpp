#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsee {

enum class ErrorCode {
  // fcidump
  MissingHeaderField,
  InvalidHeader,
  IndexOutOfRange,
  MalformedLine,
  ConflictingDuplicate,
  // catalog
  SchemaViolation,
  DuplicateTaskUuid,
  DuplicateInstanceUuid,
  TaskMismatch,
  // numerics
  InvalidOccupation,
  EigenFailure,
  SizeMismatch,
  TooLarge,
  InsufficientRows,
  InconsistentBasis,
  NoConvergence,
  // learning
  NonFiniteInput,
  RankDeficient,
  SingleClass,
  TooFewSamples,
  DimensionMismatch,
  LengthMismatch,
  TooManyFeatures,
  // harness
  EmptyCatalog,
  InsufficientLabels,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gsee
