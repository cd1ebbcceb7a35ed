#pragma once

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace edgesol {

enum class ErrorKind {
  NonFiniteInput,
  InvalidArgument,
  SingularCoefficient,
  ChiralityViolation,
  WidthViolation,
  DegenerateVelocity,
  InvalidTime,
  BoundaryLeak,
  BlowUp,
  SingularMapPoint,
  InsufficientRecords,
  UnknownClaim,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularCoefficient: return "SingularCoefficient";
    case ErrorKind::ChiralityViolation: return "ChiralityViolation";
    case ErrorKind::WidthViolation: return "WidthViolation";
    case ErrorKind::DegenerateVelocity: return "DegenerateVelocity";
    case ErrorKind::InvalidTime: return "InvalidTime";
    case ErrorKind::BoundaryLeak: return "BoundaryLeak";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::SingularMapPoint: return "SingularMapPoint";
    case ErrorKind::InsufficientRecords: return "InsufficientRecords";
    case ErrorKind::UnknownClaim: return "UnknownClaim";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind; the
/// CLI maps kinds onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures that arise while integrating or mapping valid input.
  bool is_numerical() const noexcept {
    switch (kind_) {
      case ErrorKind::BoundaryLeak:
      case ErrorKind::BlowUp:
      case ErrorKind::SingularMapPoint:
      case ErrorKind::SingularCoefficient:
      case ErrorKind::NonFiniteInput:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

/// Shortest round-trippable rendering of a double, for messages and descriptors.
inline std::string num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  for (int digits = 6; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace edgesol
