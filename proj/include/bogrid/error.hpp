#pragma once

#include <stdexcept>
#include <string>

namespace bogrid {

enum class ErrorCode {
  InvalidParameter,
  InvalidCell,
  ModeMismatch,
  ShapeMismatch,
  EmptyMask,
  Parse,
  UndefinedDistribution,
  DivideByZero,
  Io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::InvalidCell: return "invalid-cell";
    case ErrorCode::ModeMismatch: return "mode";
    case ErrorCode::ShapeMismatch: return "shape";
    case ErrorCode::EmptyMask: return "empty-mask";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::UndefinedDistribution: return "undefined-distribution";
    case ErrorCode::DivideByZero: return "divide-by-zero";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + " error: " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bogrid
