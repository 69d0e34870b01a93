#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace partite {

enum class ErrorCode {
  BoundExceeded,
  TypeMismatch,
  NotACocone,
  NoMediator,
  PreconditionFailed,
  InternalInconsistency,
  SearchExhausted,
  NotSurjective,
  SolverFailed,
  ChiPrimeIllDefined,
  HomomorphismViolation,
  SchemaError,
};

std::string_view code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code; the
/// message is prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(code_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace partite
