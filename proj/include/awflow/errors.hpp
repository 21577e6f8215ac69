#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace awflow {

enum class ErrorCode {
  InvalidArgument,
  DomainError,
  SingularMatrix,
  StepSizeUnderflow,
  NonPositiveState,
  NoExitWithinHorizon,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::NonPositiveState: return "NonPositiveState";
    case ErrorCode::NoExitWithinHorizon: return "NoExitWithinHorizon";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. The code is what
/// callers (and the CLI's error JSON) switch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace awflow
