#include "orbtrace/error.hpp"

namespace orbtrace {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::OutsideUpperHalfPlane: return "OutsideUpperHalfPlane";
    case ErrorKind::InvalidFactor: return "InvalidFactor";
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::NotAbsolutelyConvergent: return "NotAbsolutelyConvergent";
    case ErrorKind::UndefinedAtTrivialPair: return "UndefinedAtTrivialPair";
    case ErrorKind::OutsideConvergenceRegion: return "OutsideConvergenceRegion";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::UnknownAutomorphism: return "UnknownAutomorphism";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::UnsupportedPair: return "UnsupportedPair";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace orbtrace
