#include "ils/error.hpp"

namespace ils {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::RankDeficientA1: return "RankDeficientA1";
    case ErrorCode::HessianNotSPD: return "HessianNotSPD";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NullSpaceEmpty: return "NullSpaceEmpty";
    case ErrorCode::ProblemTooLarge: return "ProblemTooLarge";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::NonNumericEntry: return "NonNumericEntry";
    case ErrorCode::EntryOutOfBounds: return "EntryOutOfBounds";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace ils
