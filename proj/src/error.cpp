#include "error.hpp"

namespace virial {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::DegeneratePotential: return "DegeneratePotential";
    case ErrorCode::AlreadyShifted: return "AlreadyShifted";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::EigensolveFailure: return "EigensolveFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace virial
