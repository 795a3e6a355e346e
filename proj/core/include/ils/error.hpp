#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ils {

enum class ErrorCode {
  IndexOutOfRange,
  DimensionMismatch,
  NotPositiveDefinite,
  RankDeficientA1,
  HessianNotSPD,
  ZeroReference,
  DomainError,
  NonSquare,
  NullSpaceEmpty,
  ProblemTooLarge,
  MalformedHeader,
  UnsupportedFormat,
  NonNumericEntry,
  EntryOutOfBounds,
  Io,
  InvalidArgument,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Structured failure raised by every public entry point of the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ils
