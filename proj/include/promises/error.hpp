#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace promises {

enum class ErrorCode {
  ParseError,
  EfficiencyViolated,
  KappaOutOfRange,
  KappaTooSmall,
  LengthMismatch,
  NotZeroSum,
  NonpositiveScale,
  AllEqual,
  InstanceTooLarge,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EfficiencyViolated: return "EfficiencyViolated";
    case ErrorCode::KappaOutOfRange: return "KappaOutOfRange";
    case ErrorCode::KappaTooSmall: return "KappaTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotZeroSum: return "NotZeroSum";
    case ErrorCode::NonpositiveScale: return "NonpositiveScale";
    case ErrorCode::AllEqual: return "AllEqual";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace promises
