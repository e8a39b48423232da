#pragma once

#include <stdexcept>
#include <string>

namespace virial {

enum class ErrorCode {
  InvalidArgument,
  NotSymmetric,
  NotConvex,
  DegeneratePotential,
  AlreadyShifted,
  NoConvergence,
  NonFiniteIntegrand,
  DomainError,
  IllConditioned,
  OrderOutOfRange,
  DivisionByZero,
  DomainTooSmall,
  EigensolveFailure,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure inside the core library is reported through this type; the C
// layer translates the code into a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace virial
