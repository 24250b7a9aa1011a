/*
 * Copyright 2026 The SOTE Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Versioned JSON trial reports. Everything except `wall_time_s` is a pure
// function of (profile, seed, trial count, flags); 128-bit quantities are
// decimal strings with a log2 companion.

#ifndef SOTE_REPORT_HPP_
#define SOTE_REPORT_HPP_

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sote/bounds.hpp"
#include "sote/error.hpp"
#include "sote/profile.hpp"

namespace sote {

inline constexpr const char* kReportSchema = "sote.trial_report";
inline constexpr int kReportSchemaVersion = 1;

struct TrialReport {
  std::string protocol;
  bool exact = false;
  Profile profile;
  std::string seed_hex;
  std::size_t trials = 0;
  std::size_t exact_success = 0;
  u128 max_error = 0;
  u128 bound = 0;
  std::vector<Violation> violations;  // validator findings
  bool validator_override = false;
  std::vector<std::string> failures;  // assertion failures, by trial index
  std::size_t failed_trials = 0;
  nlohmann::json extra = nlohmann::json::object();
  double wall_time_s = 0.0;

  bool within_bound() const { return max_error <= bound; }
  bool assertions_passed() const { return failed_trials == 0 && within_bound(); }
};

namespace report {

inline nlohmann::json bound_json(u128 v) {
  const double l = bound_log2(v);
  return {{"value", to_decimal(v)}, {"log2", std::isfinite(l) ? nlohmann::json(l) : nullptr}};
}

inline nlohmann::json profile_json(const Profile& p) {
  nlohmann::json targets = nlohmann::json::array();
  for (const auto& t : p.protocols) targets.push_back(target_name(t));
  return {{"name", p.name},
          {"w", p.ring.w},
          {"p_log", p.ring.p_log},
          {"k", p.ring.k},
          {"n", p.ring.n()},
          {"t", p.ring.t},
          {"r", p.ring.r},
          {"B", p.ring.B},
          {"half_m", p.half_m_or_default()},
          {"half_ell", p.half_ell_or_default()},
          {"ote_ell", p.ote_ell_or_default()},
          {"mole_t", p.mole_t},
          {"mole_r", p.mole_r},
          {"mole_rows", p.mole_rows},
          {"mole_cols", p.mole_cols},
          {"ell_f", p.ell_f},
          {"t_a", p.t_a},
          {"d", p.depth},
          {"T", p.bound_t},
          {"inputs", p.inputs},
          {"memory_budget_mib", p.memory_budget_mib},
          {"protocols", targets}};
}

inline nlohmann::json to_json(const TrialReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) violations.push_back({{"rule", v.rule}, {"detail", v.detail}});
  return {{"schema", kReportSchema},
          {"schema_version", kReportSchemaVersion},
          {"protocol", r.protocol},
          {"exact", r.exact},
          {"params", profile_json(r.profile)},
          {"params_digest", params_digest(r.profile)},
          {"seed", r.seed_hex},
          {"trials", r.trials},
          {"exact_success", r.exact_success},
          {"failed_trials", r.failed_trials},
          {"max_error", bound_json(r.max_error)},
          {"theoretical_bound", bound_json(r.bound)},
          {"within_bound", r.within_bound()},
          {"assertions_passed", r.assertions_passed()},
          {"validator", {{"accepted", r.violations.empty()},
                         {"override", r.validator_override},
                         {"violations", violations}}},
          {"failures", r.failures},
          {"details", r.extra},
          {"wall_time_s", r.wall_time_s}};
}

inline std::string to_text(const TrialReport& r) { return to_json(r).dump(2) + "\n"; }

inline void write(const std::filesystem::path& path, const TrialReport& r) {
  std::ofstream out(path, std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot open report " + path.string());
  out << to_text(r);
  require(static_cast<bool>(out), ErrorCode::kIo, "writing report " + path.string() + " failed");
}

}  // namespace report
}  // namespace sote

#endif  // SOTE_REPORT_HPP_
