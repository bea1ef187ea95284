#include "lebedev/error.hpp"

namespace lebedev {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorCode::TailNotDecaying: return "TailNotDecaying";
    case ErrorCode::PoleArgument: return "PoleArgument";
    case ErrorCode::SeriesRangeExceeded: return "SeriesRangeExceeded";
    case ErrorCode::SummabilityViolation: return "SummabilityViolation";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
  }
  return "Unknown";
}

}  // namespace lebedev
