#include "rtb/error.hpp"

namespace rtb {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::CornerHit: return "CornerHit";
    case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorKind::IntegerOverflow: return "IntegerOverflow";
    case ErrorKind::Drift: return "DriftError";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::Ambiguous: return "Ambiguous";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::SimultaneousEvent: return "SimultaneousEvent";
    case ErrorKind::DegenerateStart: return "DegenerateStart";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::IO: return "IOFailure";
  }
  return "Unknown";
}

bool is_numerical_abort(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CornerHit:
    case ErrorKind::NumericalDegeneracy:
    case ErrorKind::IntegerOverflow:
    case ErrorKind::Drift:
    case ErrorKind::SimultaneousEvent:
    case ErrorKind::QuadratureFailure:
      return true;
    default:
      return false;
  }
}

}  // namespace rtb
