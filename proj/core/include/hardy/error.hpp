#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardy {

// Stable error codes; the CLI prints the code name next to the message.
enum class ErrorCode {
  InvalidArgument,
  EmptyFamily,
  NotMember,
  NotSubset,
  ZeroInput,
  DimensionMismatch,
  Mismatch,
  DegenerateTheta,
  VerificationFailed,
  MalformedInput,
  OutOfRange,
  DuplicateKey,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::NotSubset: return "NotSubset";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::DegenerateTheta: return "DegenerateTheta";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hardy
