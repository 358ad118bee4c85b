#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drinfeld {

/// Failure categories reported by the library. Every mathematical failure
/// carries one of these so callers (and the CLI) can name the violated
/// precondition.
enum class ErrorKind {
  InvalidRing,
  RingMismatch,
  NonUnitLeadingCoefficient,
  PreconditionViolated,
  SingularLeadingMatrix,
  NotDrinfeld,
  NotAMorphism,
  UnsupportedBase,
  UnsupportedShape,
  NotAnIsogeny,
  NotAbelian,
  NotEffective,
  MalformedPresentation,
  NotEtale,
  NotCoprime,
  BaseTooLarge,
  ResidueFieldTooSmall,
  PrecisionTooLow,
  ExtensionCapExceeded,
  MalformedInput,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidRing: return "InvalidRing";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SingularLeadingMatrix: return "SingularLeadingMatrix";
    case ErrorKind::NotDrinfeld: return "NotDrinfeld";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::UnsupportedBase: return "UnsupportedBase";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::NotAnIsogeny: return "NotAnIsogeny";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::NotEffective: return "NotEffective";
    case ErrorKind::MalformedPresentation: return "MalformedPresentation";
    case ErrorKind::NotEtale: return "NotEtale";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::BaseTooLarge: return "BaseTooLarge";
    case ErrorKind::ResidueFieldTooSmall: return "ResidueFieldTooSmall";
    case ErrorKind::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorKind::ExtensionCapExceeded: return "ExtensionCapExceeded";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Input that does not parse against a schema, as opposed to a
  /// well-formed input that fails a mathematical precondition.
  bool malformed_input() const noexcept { return kind_ == ErrorKind::MalformedInput; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

inline void require(bool cond, ErrorKind kind, const std::string& message) {
  if (!cond) fail(kind, message);
}

}  // namespace drinfeld
