#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace strengthlab {

enum class ErrorKind {
  // input and precondition failures
  NotPrime,
  ZeroInverse,
  InvalidDegree,
  SyntaxError,
  IndexOutOfRange,
  DimensionMismatch,
  ArityMismatch,
  NotHomogeneous,
  WrongDegree,
  DegreeTooSmall,
  CharTooSmall,
  CharTwo,
  MixedParameters,
  InvalidArgument,
  // resource limits
  SizeCap,
  BudgetExceeded,
  // should never happen
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for SizeCap and BudgetExceeded.
  bool is_resource_limit() const noexcept {
    return kind_ == ErrorKind::SizeCap || kind_ == ErrorKind::BudgetExceeded;
  }

 private:
  ErrorKind kind_;
};

/// SyntaxError with the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : Error(ErrorKind::SyntaxError,
              "syntax error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace strengthlab
