#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmr {

enum class ErrorCode {
  UnknownGenerator,
  MalformedWord,
  RelatorNotKilled,
  IncompleteTable,
  InconsistentCover,
  NonTransitiveMonodromy,
  RelationViolated,
  CycleTypeMismatch,
  NotASurface,
  DiskPinch,
  NoConsistentDegree,
  UnsupportedTarget,
  Unsupported,
  InconsistentInvariants,
  KneserViolated,
  MissingInvariant,
  WitnessBelowLowerBound,
  OutOfRange,
  EdgeCountViolation,
  BadVertexLink,
  Disconnected,
  DegenerateTriangle,
  InconsistentSignedCount,
  PreconditionViolated,
  InfeasibleBudget,
  SyntaxError,
  UnknownReference,
  DuplicateName,
  CompositionMismatch,
};

std::string_view error_code_name(ErrorCode code);

/// Every recoverable failure in the library is reported through this type;
/// `code()` is stable and is what tests and the CLI reports key on.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace mmr
