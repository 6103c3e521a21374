#include "radnls/errors.hpp"
#include "radnls/experiment.hpp"
#include "radnls/report.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace radnls;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("radnls_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

ExperimentConfig small_config(Scenario s, const std::string& name) {
  ExperimentConfig c;
  c.scenario = s;
  c.r_max = 32.0;
  c.n = 1024;
  c.output_dir = scratch(name).string();
  return c;
}

std::string expect_config_error(const Json& j) {
  try {
    config_from_json(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected ConfigError for " << dump_json(j);
  return {};
}

} // namespace

TEST(Config, RoundTrip) {
  ExperimentConfig c;
  c.scenario = Scenario::linear_sweep;
  c.r_max = 256.0;
  c.n = 4096;
  c.data.family = Family::rough_spectral;
  c.data.seed = 99;
  c.params.delta0 = 0.05;
  c.solver.dt = 2.5e-3;
  c.solver.snapshot_stride = 7;
  c.sweep = SweepConfig{{4, 8, 16}, {0.9, 0.95}, 0.5, 4.0, 1e-3, 2};
  c.evolve.initial = "data";
  c.check.criteria = {1, 3};
  c.write_snapshots = false;
  c.output_dir = "runs/a";
  const auto back = config_from_json(parse_json(dump_json(to_json(c))));
  EXPECT_EQ(back, c);
  EXPECT_EQ(dump_json(to_json(back)), dump_json(to_json(c)));
}

TEST(Config, DefaultsFillOptionalBlocks) {
  const auto c = config_from_json(parse_json(R"({"scenario": "decompose", "grid": {"r_max": 64, "n": 2048}})"));
  EXPECT_EQ(c.data, TestFunctionSpec{});
  EXPECT_EQ(c.params, DecompositionParams{});
  EXPECT_EQ(c.solver, SolverConfig{});
  EXPECT_FALSE(c.sweep.has_value());
}

TEST(Config, MissingFieldsAreNamed) {
  EXPECT_EQ(expect_config_error(parse_json(R"({"scenario": "decompose"})")).rfind("grid:", 0), 0u);
  EXPECT_EQ(expect_config_error(parse_json(R"({"scenario": "decompose", "grid": {"r_max": 64}})"))
                .rfind("grid.n:", 0),
            0u);
  EXPECT_EQ(expect_config_error(parse_json(R"({"grid": {"r_max": 64, "n": 64}})")).rfind("scenario:", 0),
            0u);
  EXPECT_EQ(expect_config_error(
                parse_json(R"({"scenario": "linear-sweep", "grid": {"r_max": 64, "n": 64}})"))
                .rfind("sweep:", 0),
            0u);
}

TEST(Config, InvalidValuesAreRejected) {
  const char* cases[] = {
      R"({"scenario": "warp", "grid": {"r_max": 64, "n": 64}})",
      R"({"scenario": "decompose", "grid": {"r_max": 64, "n": 64}, "extra": 1})",
      R"({"scenario": "decompose", "grid": {"r_max": -1, "n": 64}})",
      R"({"scenario": "decompose", "grid": {"r_max": 64, "n": 64.5}})",
      R"({"scenario": "decompose", "grid": {"r_max": 64, "n": 64}, "params": {"s0": 0.5}})",
      R"({"scenario": "decompose", "grid": {"r_max": 64, "n": 64}, "data": {"family": "x"}})",
      R"({"scenario": "evolve", "grid": {"r_max": 64, "n": 64}, "solver": {"dt": "big"}})",
      R"({"scenario": "linear-sweep", "grid": {"r_max": 64, "n": 64}, "sweep": {"N_list": [4, 8]}})",
      R"({"scenario": "linear-sweep", "grid": {"r_max": 64, "n": 64}, "sweep": {"N_list": [4, 6, 8]}})",
      R"({"scenario": "check", "check": {"criteria": [13]}})",
  };
  for (const char* text : cases) expect_config_error(parse_json(text));
}

TEST(Config, KernelsAndCheckNeedNoGrid) {
  EXPECT_NO_THROW(config_from_json(parse_json(R"({"scenario": "kernels"})")));
  EXPECT_NO_THROW(config_from_json(parse_json(R"({"scenario": "check", "check": {"criteria": [1]}})")));
}

TEST(SampleTimes, LadderAndUniformPart) {
  const auto t = linear_sample_times(1e-3, 1.0);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_DOUBLE_EQ(t[1], 1e-3);
  EXPECT_DOUBLE_EQ(t.back(), 1.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    EXPECT_GT(t[i], t[i - 1]);
    EXPECT_LE(t[i] - t[i - 1], 0.125 + 1e-15);
  }
}

TEST(Run, KernelsScenarioWritesManifest) {
  ExperimentConfig c;
  c.scenario = Scenario::kernels;
  c.output_dir = scratch("kernels").string();
  const auto r = run_experiment(c);
  ASSERT_EQ(r.exit_code, kExitOk) << dump_json(r.error);
  EXPECT_LE(r.report["max_closed_form_residual"].get<double>(), 1e-10);
  const auto manifest = read_json_file(std::filesystem::path(c.output_dir) / "manifest.json");
  EXPECT_EQ(manifest["config_hash"].get<std::string>(), config_hash(c));
  EXPECT_TRUE(manifest["tolerances"].contains("resolution_tol"));
  for (const auto& f : manifest["files"]) {
    const auto bytes = read_file(std::filesystem::path(c.output_dir) / f["path"].get<std::string>());
    EXPECT_EQ(f["sha256"].get<std::string>(), sha256_hex(bytes));
  }
  EXPECT_EQ(r.files.back(), "manifest.json");
  const auto csv = read_file(std::filesystem::path(c.output_dir) / "series.csv");
  EXPECT_EQ(csv.rfind("r,re_J,im_J,closed_form_residual", 0), 0u);
}

TEST(Run, DecomposeIsDeterministic) {
  auto a = small_config(Scenario::decompose, "decompose_a");
  auto b = small_config(Scenario::decompose, "decompose_b");
  a.data.family = b.data.family = Family::rough_spectral;
  a.params.delta0 = b.params.delta0 = 0.25;
  const auto ra = run_experiment(a), rb = run_experiment(b);
  ASSERT_EQ(ra.exit_code, kExitOk) << dump_json(ra.error);
  ASSERT_EQ(ra.files, rb.files);
  for (const auto& f : ra.files) {
    EXPECT_EQ(read_file(std::filesystem::path(a.output_dir) / f),
              read_file(std::filesystem::path(b.output_dir) / f))
        << f;
  }
  EXPECT_LT(ra.report["reconstruction_error"].get<double>(), 1e-10);
}

TEST(Run, InfeasibleChooseNExitsThree) {
  auto c = small_config(Scenario::decompose, "infeasible");
  c.data.family = Family::rough_spectral;
  c.params.delta0 = 1e-30;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.exit_code, kExitInfeasible);
  EXPECT_EQ(r.error["error"].get<std::string>(), "infeasible");
  EXPECT_TRUE(r.error.contains("floor"));
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(c.output_dir) / "error.json"));
}

TEST(Run, InvalidConfigExitsTwo) {
  auto c = small_config(Scenario::evolve, "invalid");
  c.solver.dt = 1.0;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.exit_code, kExitConfig);
  EXPECT_EQ(r.error["error"].get<std::string>(), "config");
  EXPECT_EQ(r.error["field"].get<std::string>(), "solver.dt");
}

TEST(Run, EvolveReportsDiagnostics) {
  auto c = small_config(Scenario::evolve, "evolve");
  c.r_max = 64.0;
  c.n = 8192;
  c.data.family = Family::smooth_bump;
  c.data.width = 2.0;
  c.data.amplitude = 0.1;
  c.solver.t_end = 0.1;
  c.solver.snapshot_stride = 5;
  const auto r = run_experiment(c);
  ASSERT_EQ(r.exit_code, kExitOk) << dump_json(r.error);
  EXPECT_EQ(r.report["status"].get<std::string>(), "ok");
  EXPECT_TRUE(std::isfinite(r.report["sup_hdot1_w"].get<double>()));
  EXPECT_TRUE(std::isfinite(r.report["x_norm"]["total"].get<double>()));
  const auto manifest = read_json_file(std::filesystem::path(c.output_dir) / "manifest.json");
  EXPECT_TRUE(manifest["results"].contains("sup_hdot1_w"));
  EXPECT_TRUE(manifest["results"].contains("x_norm_total"));
}

TEST(Run, LinearSweepUsesWorkerPool) {
  auto c = small_config(Scenario::linear_sweep, "sweep");
  c.r_max = 512.0;
  c.n = 16384;
  c.data.family = Family::rough_spectral;
  c.data.band_limit = 8.0;
  c.sweep = SweepConfig{{1, 2, 4}, {}, 0.25, 1.0, 1e-3, 3};
  c.write_snapshots = true;
  const auto r = run_experiment(c);
  ASSERT_EQ(r.exit_code, kExitOk) << dump_json(r.error);
  EXPECT_EQ(r.report["fits"].size(), 1u);
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(c.output_dir) / "plots/sweep.svg"));
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(c.output_dir) / "snapshots/s0_0_N_4_v0.bin"));
  // Same numbers with a single worker.
  auto serial = c;
  serial.output_dir = scratch("sweep_serial").string();
  serial.sweep->workers = 1;
  const auto s = run_experiment(serial);
  EXPECT_EQ(read_file(std::filesystem::path(c.output_dir) / "series.csv"),
            read_file(std::filesystem::path(serial.output_dir) / "series.csv"));
}
