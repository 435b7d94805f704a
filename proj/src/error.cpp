#include "mmr/error.hpp"

namespace mmr {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::MalformedWord: return "MalformedWord";
    case ErrorCode::RelatorNotKilled: return "RelatorNotKilled";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::InconsistentCover: return "InconsistentCover";
    case ErrorCode::NonTransitiveMonodromy: return "NonTransitiveMonodromy";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::CycleTypeMismatch: return "CycleTypeMismatch";
    case ErrorCode::NotASurface: return "NotASurface";
    case ErrorCode::DiskPinch: return "DiskPinch";
    case ErrorCode::NoConsistentDegree: return "NoConsistentDegree";
    case ErrorCode::UnsupportedTarget: return "UnsupportedTarget";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InconsistentInvariants: return "InconsistentInvariants";
    case ErrorCode::KneserViolated: return "KneserViolated";
    case ErrorCode::MissingInvariant: return "MissingInvariant";
    case ErrorCode::WitnessBelowLowerBound: return "WitnessBelowLowerBound";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EdgeCountViolation: return "EdgeCountViolation";
    case ErrorCode::BadVertexLink: return "BadVertexLink";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::InconsistentSignedCount: return "InconsistentSignedCount";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InfeasibleBudget: return "InfeasibleBudget";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::CompositionMismatch: return "CompositionMismatch";
  }
  return "Unknown";
}

}  // namespace mmr
