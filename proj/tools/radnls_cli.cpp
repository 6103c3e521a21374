// radnls <scenario> --config <path> [--out <dir>] [--dt <x>] [--t-end <x>]

#include "radnls/errors.hpp"
#include "radnls/experiment.hpp"
#include "radnls/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

int config_failure(const std::string& message) {
  std::cout << radnls::dump_json(radnls::error_json("config", message)) << "\n";
  return radnls::kExitConfig;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial energy-critical NLS workbench"};
  std::string scenario, config_path;
  std::optional<std::string> out_dir;
  std::optional<double> dt, t_end;
  app.add_option("scenario", scenario,
                 "kernels | decompose | linear-sweep | evolve | scatter | check")
      ->required();
  app.add_option("--config", config_path, "JSON experiment config")->required();
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--dt", dt, "time step (overrides solver.dt)");
  app.add_option("--t-end", t_end, "final time (overrides solver.t_end)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return config_failure(std::string("arguments: ") + e.what());
  }

  radnls::ExperimentConfig cfg;
  try {
    auto j = radnls::read_json_file(config_path);
    if (!j.is_object()) throw radnls::ConfigError("config: expected an object");
    j["scenario"] = scenario;
    if (out_dir) j["output_dir"] = *out_dir;
    if (dt || t_end) {
      if (!j.contains("solver")) j["solver"] = radnls::Json::object();
      if (dt) j["solver"]["dt"] = *dt;
      if (t_end) j["solver"]["t_end"] = *t_end;
    }
    cfg = radnls::config_from_json(j);
  } catch (const radnls::Error& e) {
    return config_failure(e.what());
  }

  const auto outcome = radnls::run_experiment(cfg);
  if (!outcome.error.is_null()) {
    std::cout << radnls::dump_json(outcome.error) << "\n";
    return outcome.exit_code;
  }
  if (cfg.scenario == radnls::Scenario::check)
    for (const auto& row : outcome.report["criteria"])
      std::cout << (row["pass"].get<bool>() ? "PASS" : "FAIL") << " [" << row["id"].get<int>()
                << "] " << row["name"].get<std::string>() << ": "
                << row["summary"].get<std::string>() << "\n";
  std::cout << "wrote " << outcome.files.size() << " files to " << cfg.output_dir << "\n";
  return outcome.exit_code;
}
