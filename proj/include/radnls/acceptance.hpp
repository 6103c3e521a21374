#pragma once

// The acceptance suite: twelve numbered criteria, each evaluated at a pinned
// configuration and compared against pinned tolerances. Used by the
// acceptance binary and by the `check` scenario.

#include "radnls/report.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace radnls::acceptance {

namespace tol {
inline constexpr double kernel_closed_form = 1e-10;
inline constexpr double kernel_outgoing_wave = 1e-10;
inline constexpr double reconstruction = 1e-5;
inline constexpr double calibration = 1e-8;  ///< |c - 1/(2 pi)|
inline constexpr double l2_bound = 3.0;
inline constexpr double band_slope = -5.0;
inline constexpr double propagation_slope = -1.5;
inline constexpr double sweep_slack = 0.1;
inline constexpr double energy_slack = 0.15;
inline constexpr double mass_drift = 1e-10;
inline constexpr double energy_drift = 1e-5;
inline constexpr double halving_ratio = 4.0;
inline constexpr double halving_slack = 0.5;
inline constexpr double morawetz_slack = 1e-3;
inline constexpr double scattering = 1e-4;
/// Roundoff allowance when testing that convergence(t) is non-increasing.
inline constexpr double monotone_slack = 1e-12;
} // namespace tol

/// Every tolerance above, by name.
Json tolerances_json();

struct Outcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;  ///< one line of measured values
  Json data;            ///< full measurements
};

/// Criterion ids 1..12.
std::vector<int> all_criteria();

/// Runs one criterion. work_dir receives the scenario outputs that some
/// criteria produce (flagship run, determinism reruns). Library errors are
/// reported as a failed outcome, never thrown.
Outcome run_criterion(int id, const std::filesystem::path& work_dir);

/// "PASS [id] name: summary" or "FAIL [id] ...".
std::string format_line(const Outcome& o);

} // namespace radnls::acceptance
