#pragma once

#include <nlohmann/json.hpp>

#include <complex>
#include <string>
#include <vector>

namespace orbtrace {

/// Outcome of one identity or transformation-law check.
struct VerificationReport {
  enum class Mode { exact, numeric };

  std::string label;
  Mode mode = Mode::exact;
  bool pass = false;
  // Numeric mode only.
  std::complex<double> constant{1.0, 0.0};
  double residual = 0.0;
  double tolerance = 0.0;
  std::vector<std::complex<double>> samples;
  // Free-form detail, e.g. the first mismatching exponent of an exact check.
  std::string detail;
};

nlohmann::json to_json(const VerificationReport& r);

}  // namespace orbtrace
