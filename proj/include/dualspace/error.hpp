#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dualspace {

/// Error classes surfaced by the library. The CLI maps each to its own exit code.
enum class ErrorKind {
  InvalidArgument,
  FieldMismatch,
  DivisionByZero,
  DimensionMismatch,
  IndexOutOfRange,
  BadTruncation,
  IncompatibleThread,
  UnrepresentableComposite,
  Undecidable,
  TruncationTooSmall,
  PreconditionViolated,
  ParseError,
  InvariantViolation,
  IoError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BadTruncation: return "BadTruncation";
    case ErrorKind::IncompatibleThread: return "IncompatibleThread";
    case ErrorKind::UnrepresentableComposite: return "UnrepresentableComposite";
    case ErrorKind::Undecidable: return "Undecidable";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the 1-based line it occurred on (0 when not line-bound).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace dualspace
