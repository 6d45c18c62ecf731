#include "orbtrace/report.hpp"

namespace orbtrace {

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["label"] = r.label;
  j["mode"] = r.mode == VerificationReport::Mode::exact ? "exact" : "numeric";
  j["pass"] = r.pass;
  if (r.mode == VerificationReport::Mode::numeric) {
    j["constant"] = {r.constant.real(), r.constant.imag()};
    j["residual"] = r.residual;
    j["tolerance"] = r.tolerance;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : r.samples) samples.push_back({s.real(), s.imag()});
    j["samples"] = std::move(samples);
  }
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

}  // namespace orbtrace
