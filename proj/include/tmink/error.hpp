#ifndef TMINK_ERROR_HPP
#define TMINK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tmink {

enum class ErrorKind {
  InvalidInput,
  UnboundedBody,
  EmptyInterior,
  NegativeScale,
  Precondition,
  MeshTooFine,
  LinearSolveFailure,
  MaximumPrincipleViolation,
  PointOutside,
  FluxSolveFailure,
  FacetAttributionMissing,
  UnbalanceableMeasure,
  NoConvergence,
  ParseError,
  InvariantViolation,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::UnboundedBody: return "UnboundedBody";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::NegativeScale: return "NegativeScale";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::MeshTooFine: return "MeshTooFine";
    case ErrorKind::LinearSolveFailure: return "LinearSolveFailure";
    case ErrorKind::MaximumPrincipleViolation: return "MaximumPrincipleViolation";
    case ErrorKind::PointOutside: return "PointOutside";
    case ErrorKind::FluxSolveFailure: return "FluxSolveFailure";
    case ErrorKind::FacetAttributionMissing: return "FacetAttributionMissing";
    case ErrorKind::UnbalanceableMeasure: return "UnbalanceableMeasure";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace tmink

#endif  // TMINK_ERROR_HPP
