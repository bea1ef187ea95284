#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lebedev {

/// Hard failures. Budget exhaustion in quadrature is not an error: it is
/// reported through QuadratureResult::converged instead.
enum class ErrorCode {
  InvalidArgument,
  InvalidInterval,
  NonFiniteEvaluation,
  TailNotDecaying,
  PoleArgument,
  SeriesRangeExceeded,
  SummabilityViolation,
  FamilyMismatch,
  InvalidProfile,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lebedev
