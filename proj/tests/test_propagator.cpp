#include "oracles.hpp"

#include "radnls/errors.hpp"
#include "radnls/norms.hpp"
#include "radnls/propagator.hpp"
#include "radnls/transforms.hpp"

#include <gtest/gtest.h>

using namespace radnls;

namespace {
RadialField gaussian_field(const RadialGrid& g, double A = 1.0) {
  return oracle::sample(g, [A](double r) { return oracle::gaussian(r, A); });
}
} // namespace

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.dt = 0.02;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.mu = 0.5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.snapshot_stride = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.dealias_fraction = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(LinearFlow, GaussianMatchesClosedForm) {
  const auto g = make_grid(32.0, 4096);
  const auto f = gaussian_field(g);
  for (double t : {0.01, 0.1, 0.5}) {
    const auto u = linear_flow(f, t);
    const auto ref = oracle::sample(g, [t](double r) { return oracle::gaussian_free_flow(r, t); });
    EXPECT_LT(oracle::max_diff(u, ref), 1e-12) << t;
  }
}

TEST(LinearFlow, GroupProperty) {
  const auto g = make_grid(32.0, 2048);
  const auto f = oracle::sample(g, [](double r) { return oracle::gaussian(r - 3.0) * std::cos(4.0 * r); });
  const auto a = linear_flow(linear_flow(f, 0.07), 0.11);
  const auto b = linear_flow(f, 0.18);
  EXPECT_LT(relative_l2_error(a, b, f), 1e-13);
  EXPECT_LT(relative_l2_error(linear_flow(b, -0.18), f, f), 1e-13);
}

TEST(Evolve, LinearCaseIsExactFlow) {
  const auto g = make_grid(32.0, 2048);
  const auto f = gaussian_field(g);
  SolverConfig c;
  c.mu = 0.0;
  c.t_end = 0.2;
  c.dealias_fraction = 1.0;
  const auto run = evolve_nls(f, c);
  EXPECT_LT(relative_l2_error(run.snapshots.back(), linear_flow(f, 0.2), f), 1e-12);
  EXPECT_EQ(run.times.size(), 41u);
  EXPECT_LT(run.mass_drift, 1e-13);
}

TEST(Evolve, ConservesMassAndEnergyDefocusing) {
  const auto g = make_grid(32.0, 2048);
  SolverConfig c;
  c.t_end = 0.5;
  c.mu = 1.0;
  const auto run = evolve_nls(gaussian_field(g), c);
  EXPECT_EQ(run.status, "ok");
  EXPECT_LT(run.mass_drift, 1e-12);
  EXPECT_LT(run.energy_drift, 1e-4);
  EXPECT_GT(run.energy_series.front(), 0.0);
}

TEST(Evolve, StrangIsSecondOrder) {
  const auto g = make_grid(32.0, 2048);
  const auto f = gaussian_field(g);
  SolverConfig c;
  c.t_end = 0.25;
  c.mu = 1.0;
  c.dt = 1e-3;
  const auto ref = evolve_nls(f, c).snapshots.back();
  std::vector<double> err;
  for (double dt : {1e-2, 5e-3}) {
    c.dt = dt;
    err.push_back(relative_l2_error(evolve_nls(f, c).snapshots.back(), ref, f));
  }
  EXPECT_NEAR(err[0] / err[1], 4.0, 0.5);
}

TEST(Evolve, SnapshotStrideAndTimes) {
  SolverConfig c;
  c.t_end = 0.1;
  c.dt = 3e-3;  // 34 steps of 0.1/34
  c.snapshot_stride = 5;
  const auto t = snapshot_times(c);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_DOUBLE_EQ(t.back(), 0.1);
  EXPECT_EQ(t.size(), 1u + 6u + 1u);
  const auto run = evolve_nls(gaussian_field(make_grid(16.0, 512)), c);
  EXPECT_EQ(run.times, t);
}

TEST(Evolve, BoundaryShellThrows) {
  const auto g = make_grid(8.0, 512);
  const auto f = oracle::sample(g, [](double r) { return oracle::gaussian(r - 6.0); });
  SolverConfig c;
  c.t_end = 0.05;
  EXPECT_THROW(evolve_nls(f, c), ResolutionError);
}

TEST(Evolve, FocusingGuardTrips) {
  const auto g = make_grid(16.0, 2048);
  SolverConfig c;
  c.mu = -1.0;
  c.t_end = 1.0;
  c.dt = 1e-3;
  c.blowup_guard = 2.0;
  c.boundary_margin = 0.0;
  const auto run = evolve_nls(gaussian_field(g, 3.0), c);
  EXPECT_EQ(run.status, "guard-trip");
  EXPECT_LT(run.times.back(), 1.0);
}

TEST(LinearSeries, StreamedMatchesStored) {
  const auto g = make_grid(32.0, 1024);
  const auto f = gaussian_field(g);
  const std::vector<double> times{0.0, 0.01, 0.1, 0.3};
  const auto run = evolve_linear_series(f, times);
  stream_linear_series(f, times, [&](std::size_t k, double t, const RadialField& v) {
    EXPECT_EQ(t, times[k]);
    EXPECT_EQ(v.values, run.snapshots[k].values);
  });
  EXPECT_THROW(evolve_linear_series(f, std::vector<double>{0.2, 0.1}), ConfigError);
}

TEST(Perturbation, DifferenceAndEnergy) {
  const auto g = make_grid(32.0, 1024);
  const auto f = gaussian_field(g);
  SolverConfig c;
  c.t_end = 0.1;
  const auto u = evolve_nls(f, c);
  const auto v = evolve_linear_series(0.5 * f, u.times);
  const auto w = perturbation_series(u, v);
  ASSERT_EQ(w.snapshots.size(), u.snapshots.size());
  EXPECT_LT(relative_l2_error(w.snapshots[3], u.snapshots[3] - v.snapshots[3], f), 1e-15);
  const double h = hdot1_norm(w.snapshots[3]);
  EXPECT_DOUBLE_EQ(w.norm_densities.at("hdot1_w")[3], h);
  EXPECT_NEAR(w.energy_series[3],
              0.5 * h * h + std::pow(lebesgue_norm(u.snapshots[3], 6.0), 6.0) / 6.0, 1e-14);
}

TEST(Boundary, MassFraction) {
  const auto g = make_grid(10.0, 1000);
  RadialField f(g);
  for (std::size_t j = 950; j < g.n; ++j) f[j] = 1.0;
  EXPECT_NEAR(boundary_mass_fraction(f, 0.1), 1.0, 1e-15);
  EXPECT_LT(boundary_mass_fraction(gaussian_field(g), 0.1), 1e-100);
}
