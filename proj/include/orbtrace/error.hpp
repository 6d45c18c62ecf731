#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbtrace {

enum class ErrorKind {
  NotInvertible,
  OutsideUpperHalfPlane,
  InvalidFactor,
  InvalidWeight,
  NotAbsolutelyConvergent,
  UndefinedAtTrivialPair,
  OutsideConvergenceRegion,
  WindowTooSmall,
  InvalidDimension,
  UnknownAutomorphism,
  BudgetExceeded,
  UnsupportedPair,
  DegenerateSample,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace orbtrace
