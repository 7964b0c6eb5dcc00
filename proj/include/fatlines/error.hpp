#pragma once

#include <stdexcept>
#include <string>

namespace fatlines {

/// Error categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  DependentForms,
  DuplicateComponent,
  DuplicateLine,
  LineInHyperplane,
  GenericityFailure,
  SingularChange,
  BoundExceeded,
  DegenerateDraw,
  SchemaError,
  NonPrimeModulus,
  CharacteristicTooSmall,
  InvariantViolation,
  Usage,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DependentForms: return "DependentForms";
    case ErrorKind::DuplicateComponent: return "DuplicateComponent";
    case ErrorKind::DuplicateLine: return "DuplicateLine";
    case ErrorKind::LineInHyperplane: return "LineInHyperplane";
    case ErrorKind::GenericityFailure: return "GenericityFailure";
    case ErrorKind::SingularChange: return "SingularChange";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::DegenerateDraw: return "DegenerateDraw";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::CharacteristicTooSmall: return "CharacteristicTooSmall";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

  /// True for errors caused by malformed input rather than by a computation.
  bool is_input_error() const noexcept {
    switch (kind_) {
      case ErrorKind::DependentForms:
      case ErrorKind::DuplicateComponent:
      case ErrorKind::DuplicateLine:
      case ErrorKind::SchemaError:
      case ErrorKind::NonPrimeModulus:
      case ErrorKind::Usage:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace fatlines
