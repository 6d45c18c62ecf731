#pragma once

// Named verification suites, one per reproducible identity family.

#include "orbtrace/report.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace orbtrace::suites {

struct SuiteResult {
  std::string name;
  std::vector<VerificationReport> items;
  bool pass = false;
  double duration_ms = 0.0;

  std::size_t passed() const;
};

/// Timing is left out unless asked for, so repeated runs serialize identically.
nlohmann::json to_json(const SuiteResult& r, bool with_timing = false);
std::string to_text(const SuiteResult& r);

struct SuiteInfo {
  std::string name;
  std::string summary;
  std::function<std::vector<VerificationReport>()> run;
};

/// All suites in a fixed order.
const std::vector<SuiteInfo>& registry();

/// Throws InvalidArgument for an unknown name.
SuiteResult run_suite(const std::string& name);

// Individual suite bodies.
std::vector<VerificationReport> sigma_examples();
std::vector<VerificationReport> g_examples();
std::vector<VerificationReport> enumeration_oracle();
std::vector<VerificationReport> q_transform();
std::vector<VerificationReport> p_transform();
std::vector<VerificationReport> prop_2_3();
std::vector<VerificationReport> bracket_identities();
std::vector<VerificationReport> eisenstein_cross();
std::vector<VerificationReport> eta_laws();
std::vector<VerificationReport> transform_constants();
std::vector<VerificationReport> bernoulli_difference();

}  // namespace orbtrace::suites
