#include "hhverify/error.hpp"

namespace hhv {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorKind::MissingExponents: return "MissingExponents";
    case ErrorKind::InvalidExponents: return "InvalidExponents";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::PositivityRequired: return "PositivityRequired";
    case ErrorKind::ParameterMismatch: return "ParameterMismatch";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::NotAViolation: return "NotAViolation";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hhv
