#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rfacet {

enum class ErrorCode {
  NegativeCycle,
  DanglingVertex,
  TargetHasOutEdges,
  UnknownVertex,
  DuplicateEdgeName,
  InvalidTree,
  NotATree,
  NotImproving,
  NoTreeInSubset,
  PermutationDomainTooSmall,
  RecursionDepthExceeded,
  NonGenericInstance,
  EnumerationBoundExceeded,
  UniverseTooLarge,
  ConditioningOnEmptySet,
  ZeroTrials,
  SearchExhausted,
  TooLargeForExhaustiveCheck,
  NotCubeShaped,
  GenerationFailedAfterRetries,
  ParseError,
  WriteError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All library failures carry a code so callers (and tests) can branch on
// the kind of failure without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rfacet
