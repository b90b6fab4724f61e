#include "rfacet/errors.hpp"

namespace rfacet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeCycle: return "NegativeCycle";
    case ErrorCode::DanglingVertex: return "DanglingVertex";
    case ErrorCode::TargetHasOutEdges: return "TargetHasOutEdges";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::DuplicateEdgeName: return "DuplicateEdgeName";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::NotImproving: return "NotImproving";
    case ErrorCode::NoTreeInSubset: return "NoTreeInSubset";
    case ErrorCode::PermutationDomainTooSmall: return "PermutationDomainTooSmall";
    case ErrorCode::RecursionDepthExceeded: return "RecursionDepthExceeded";
    case ErrorCode::NonGenericInstance: return "NonGenericInstance";
    case ErrorCode::EnumerationBoundExceeded: return "EnumerationBoundExceeded";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::ConditioningOnEmptySet: return "ConditioningOnEmptySet";
    case ErrorCode::ZeroTrials: return "ZeroTrials";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::TooLargeForExhaustiveCheck: return "TooLargeForExhaustiveCheck";
    case ErrorCode::NotCubeShaped: return "NotCubeShaped";
    case ErrorCode::GenerationFailedAfterRetries: return "GenerationFailedAfterRetries";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::WriteError: return "WriteError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace rfacet
