#pragma once

// Config-driven scenarios: kernels, decompose, linear-sweep, evolve, scatter
// and check. Every scenario writes into its output directory
//
//   series.csv, report.json, snapshots/*.bin+*.json, plots/*.svg
//
// and finally manifest.json, which lists each file with its SHA-256, the
// config hash, the calibration constant and every tolerance in force.
// Outputs are byte-stable for a fixed config.

#include "radnls/propagator.hpp"
#include "radnls/report.hpp"
#include "radnls/test_functions.hpp"
#include "radnls/transforms.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace radnls {

enum class Scenario { kernels, decompose, linear_sweep, evolve, scatter, check };

std::string to_string(Scenario s);
/// Throws ConfigError for unknown names.
Scenario scenario_from_string(const std::string& name);

struct SweepConfig {
  std::vector<double> N_list;
  std::vector<double> s0_list;
  double delta = 0.5;  ///< late-time window starts at t = delta
  double t_end = 8.0;
  /// Geometric snapshot ladder below 1/8 starts here (resolves t -> 0).
  double t_min = 1e-4;
  std::size_t workers = 1;

  bool operator==(const SweepConfig&) const = default;
};

struct EvolveConfig {
  /// "f_plus" evolves u0 = f_+, "data" evolves u0 = f.
  std::string initial = "f_plus";
  /// When false the linear part v is taken as zero.
  bool linear_part = true;
  double eta = 0.1;  ///< S-norm threshold for the interval split

  bool operator==(const EvolveConfig&) const = default;
};

struct CheckConfig {
  std::vector<int> criteria;  ///< empty runs every criterion

  bool operator==(const CheckConfig&) const = default;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::decompose;
  double r_max = 128.0;
  std::size_t n = 8192;
  TestFunctionSpec data;
  DecompositionParams params;
  SolverConfig solver;
  std::optional<SweepConfig> sweep;
  EvolveConfig evolve;
  CheckConfig check;
  bool write_snapshots = true;
  std::string output_dir = "out";

  /// Scenario-specific requirements; throws ConfigError naming the field.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Full config as JSON in a fixed field order.
Json to_json(const ExperimentConfig& c);

/// Parses a config. Missing required fields raise ConfigError whose message
/// starts with the dotted field path ("grid", "grid.n", "sweep.N_list", ...).
ExperimentConfig config_from_json(const Json& j);

/// Config without output_dir: what determines the results. Reports embed it
/// and the manifest hashes it, so reruns into other directories match.
Json content_json(const ExperimentConfig& c);
std::string config_hash(const ExperimentConfig& c);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Exit codes of the runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  Json report;                     ///< scenario report (also in report.json)
  std::vector<std::string> files;  ///< paths relative to output_dir
  Json error;                      ///< machine-readable error, null on success
};

/// Runs one scenario. Library errors are caught and mapped onto exit codes;
/// the error JSON is returned and also written to error.json when the output
/// directory is writable.
RunOutcome run_experiment(const ExperimentConfig& c);

/// Error JSON {"error": kind, "message": ..., ["field": ...], ["floor": ...]}.
Json error_json(const std::string& kind, const std::string& message);

/// Snapshot ladder for linear runs: geometric from t_min up to 1/8 at ratio
/// 2^{1/4}, then uniform steps of 1/8 up to t_end. Includes t = 0.
std::vector<double> linear_sample_times(double t_min, double t_end);

} // namespace radnls
