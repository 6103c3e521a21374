#include "oracles.hpp"

#include "radnls/errors.hpp"
#include "radnls/inequalities.hpp"
#include "radnls/norms.hpp"
#include "radnls/test_functions.hpp"
#include "radnls/transforms.hpp"

#include <gtest/gtest.h>

using namespace radnls;

namespace {
RadialField gaussian_field(const RadialGrid& g, double A = 1.0, double w = 1.0) {
  return oracle::sample(g, [A, w](double r) { return oracle::gaussian(r, A, w); });
}

EvolutionResult synthetic_run(const RadialField& f, const std::vector<double>& times) {
  EvolutionResult run;
  run.times = times;
  for (double t : times) run.snapshots.push_back(std::exp(-t) * f);
  return run;
}
} // namespace

TEST(Lebesgue, GaussianClosedForms) {
  const auto g = make_grid(16.0, 4096);
  const auto f = gaussian_field(g, 0.7, 1.3);
  for (double p : {1.0, 1.2, 2.0, 2.4, 3.0, 6.0, 8.0, 10.0, 12.0})
    EXPECT_NEAR(lebesgue_norm(f, p), std::pow(oracle::gaussian_lp_pow(p, 0.7, 1.3), 1.0 / p),
                1e-12) << p;
  EXPECT_DOUBLE_EQ(lebesgue_norm(f, kInf), 0.7);
  EXPECT_THROW(lebesgue_norm(f, 4.0), DomainError);
}

TEST(Lebesgue, GradientNormMatchesQuadrature) {
  const auto g = make_grid(16.0, 4096);
  const auto f = gaussian_field(g);
  const double ref = oracle::radial_integral(
      [](double r) { return std::pow(2.0 * kPi * r * oracle::gaussian(r), 6.0); }, 0.0, 8.0);
  EXPECT_NEAR(lebesgue_norm(f, 6.0, true), std::pow(ref, 1.0 / 6.0), 1e-10);
}

TEST(Conservation, MassEnergyClosedForms) {
  const auto g = make_grid(16.0, 4096);
  const auto f = gaussian_field(g);
  EXPECT_NEAR(mass(f), oracle::gaussian_lp_pow(2.0), 1e-13);
  EXPECT_NEAR(hdot1_norm(f), std::sqrt(oracle::gaussian_hdot1_sq()), 1e-12);
  EXPECT_NEAR(energy(f, 1.0), 0.5 * oracle::gaussian_hdot1_sq() + oracle::gaussian_lp_pow(6.0) / 6.0,
              1e-12);
  EXPECT_NEAR(energy(f, -1.0), 0.5 * oracle::gaussian_hdot1_sq() - oracle::gaussian_lp_pow(6.0) / 6.0,
              1e-12);
}

TEST(TimeNorm, ExactOnLinearSeries) {
  TimeSeries s{{0.0, 0.1, 0.2, 0.3}, {1.0, 1.0, 1.0, 1.0}};
  EXPECT_NEAR(time_norm(s, 2.0, 0.0, 0.3), std::sqrt(0.3), 1e-15);
  EXPECT_NEAR(time_norm(s, 1.0, 0.05, 0.25), 0.2, 1e-15);
  TimeSeries lin{{0.0, 0.1, 0.2}, {0.0, 1.0, 2.0}};
  EXPECT_NEAR(time_norm(lin, 1.0, 0.0, 0.2), 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(time_norm(lin, kInf, 0.0, 0.2), 2.0);
  EXPECT_NEAR(time_norm(lin, 1.0, 0.05, 0.15), 0.1, 1e-15);
}

TEST(TimeNorm, RejectsGapsAndUncoveredIntervals) {
  TimeSeries s{{0.0, 0.5}, {1.0, 1.0}};
  EXPECT_THROW(time_norm(s, 2.0, 0.0, 0.5), ResolutionError);
  TimeSeries t{{0.0, 0.1}, {1.0, 1.0}};
  EXPECT_THROW(time_norm(t, 2.0, 0.0, 0.2), ConfigError);
}

TEST(MixedNorm, SeparableRun) {
  const auto g = make_grid(16.0, 2048);
  const auto f = gaussian_field(g);
  std::vector<double> times;
  for (int k = 0; k <= 80; ++k) times.push_back(k / 80.0);
  const auto run = synthetic_run(f, times);
  // ||e^{-t} f||_{L^2_t L^6_x[0,1]} = ||f||_6 * sqrt((1 - e^{-2})/2), up to trapezoid error.
  const double exact = lebesgue_norm(f, 6.0) * std::sqrt((1.0 - std::exp(-2.0)) / 2.0);
  EXPECT_NEAR(mixed_norm(run, {2.0, 6.0, 0.0, 1.0, false}), exact, 1e-4 * exact);
  const double s = s_norm(run, 0.0, 1.0);
  EXPECT_NEAR(s, mixed_norm(run, {2.0, 6.0, 0.0, 1.0, true}) + mixed_norm(run, {8.0, 12.0, 0.0, 1.0, false}),
              1e-14);
  EXPECT_GE(s0_strichartz_norm(run, 0.0, 1.0), mixed_norm(run, {kInf, 2.0, 0.0, 1.0, false}));
}

TEST(WorkingNorms, WeightsFollowN) {
  const std::array<double, 4> raw{1.0, 2.0, 3.0, 4.0};
  const auto y = y_norm_from_raw(raw, 16.0, 0.9);
  EXPECT_NEAR(y.exponent[0], 0.9 - 5.0 / 6.0, 1e-15);
  EXPECT_NEAR(y.terms[3], 4.0 * std::pow(16.0, 0.9), 1e-12);
  EXPECT_NEAR(y.total, y.terms[0] + y.terms[1] + y.terms[2] + y.terms[3], 1e-12);
  const auto x = x_norm_from_raw({1.0, 1.0}, 8.0, 0.9);
  EXPECT_NEAR(x.terms[0], std::pow(8.0, 3.0 * (0.9 - 1.0)), 1e-15);
  EXPECT_NEAR(x.terms[1], std::pow(8.0, 9.0 / 8.0 * (0.9 - 1.0)), 1e-15);
}

TEST(Region, MaskedNormsSplitTheField) {
  const auto g = make_grid(16.0, 4096);
  const auto f = gaussian_field(g, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(region_radius(0.25, 3, 0.5), 0.25 * 5.0);
  const double in = region_masked_spatial_norm(f, 0.5, 0.25, 3, Side::inside, 2.0);
  const double out = region_masked_spatial_norm(f, 0.5, 0.25, 3, Side::outside, 2.0);
  EXPECT_GT(in, 0.0);
  EXPECT_GT(out, 0.0);
  EXPECT_LE(in, l2_norm(f));
  EXPECT_LE(in + out, 2.0 * l2_norm(f));
}

TEST(Morawetz, RealDataHasZeroMomentum) {
  const auto g = make_grid(16.0, 2048);
  EXPECT_NEAR(morawetz_functional(gaussian_field(g)), 0.0, 1e-15);
  const double ref =
      oracle::radial_integral([](double r) { return std::pow(oracle::gaussian(r), 6.0) / r; }, 0.0, 8.0);
  EXPECT_NEAR(morawetz_density(gaussian_field(g)), ref, 1e-6);
}

TEST(Morawetz, OutgoingPhaseHasPositiveMomentum) {
  // u = g(r) e^{i k r}: M = k ||u||_2^2.
  const auto g = make_grid(32.0, 8192);
  const double k = 3.0;
  const auto u = oracle::sample(g, [k](double r) { return oracle::gaussian(r - 8.0) * std::polar(1.0, k * r); });
  EXPECT_NEAR(morawetz_functional(u), k * mass(u), 1e-9);
}

TEST(Morawetz, DefocusingLedgerIsNonNegative) {
  const auto g = make_grid(64.0, 4096);
  SolverConfig c;
  c.t_end = 1.0;
  c.snapshot_stride = 5;
  const auto run = evolve_nls(gaussian_field(g), c);
  const auto rep = morawetz_report(run);
  EXPECT_GT(rep.action, 0.0);
  EXPECT_GE(rep.margin, 0.0);
  EXPECT_LE(rep.holder_ratio, 1.0);
}

TEST(Scattering, LinearRunHasExactProfile) {
  const auto g = make_grid(32.0, 2048);
  const auto f = gaussian_field(g, 0.1);
  SolverConfig c;
  c.mu = 0.0;
  c.t_end = 0.5;
  c.dealias_fraction = 1.0;
  const auto run = evolve_nls(f, c);
  const auto sc = scattering_profile(run, 0.0);
  EXPECT_LT(relative_l2_error(sc.u_plus, f, f), 1e-12);
  for (double v : sc.convergence.values) EXPECT_LT(v, 1e-11);
  EXPECT_FALSE(sc.horizon_warning);
}

TEST(Scattering, SmallDataConverges) {
  const auto g = make_grid(128.0, 4096);
  SolverConfig c;
  c.t_end = 2.0;
  c.snapshot_stride = 4;
  const auto run = evolve_nls(gaussian_field(g, 0.1), c);
  const auto sc = scattering_profile(run, 1.0);
  EXPECT_LT(sc.convergence.values.back(), 1e-4);
}

TEST(Fit, RecoversPowerLaw) {
  const std::vector<double> x{2, 4, 8, 16};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.25));
  const auto f = fit_exponent(x, y);
  EXPECT_NEAR(f.slope, -1.25, 1e-13);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
  EXPECT_LT(f.residual, 1e-13);
  EXPECT_THROW(fit_exponent(std::vector<double>{1, 2}, std::vector<double>{1, 2}), DomainError);
  EXPECT_THROW(fit_exponent(x, std::vector<double>{1, 0, 1, 1}), DomainError);
}

TEST(Split, ThresholdClosesExactly) {
  TimeSeries d{{0.0, 0.5, 1.0, 1.5, 2.0}, {1.0, 1.0, 1.0, 1.0, 1.0}};
  const auto s = split_by_threshold(d, 0.5);
  ASSERT_EQ(s.boundaries.size(), 5u);
  for (std::size_t i = 0; i < s.boundaries.size(); ++i) EXPECT_NEAR(s.boundaries[i], 0.5 * i, 1e-15);
  const auto one = split_by_threshold(d, 10.0);
  ASSERT_EQ(one.boundaries.size(), 2u);
  EXPECT_NEAR(one.accumulated[0], 2.0, 1e-15);
}

TEST(Split, LinearDensityCrossing) {
  // density t on [0, 2]: int_0^x t dt = 0.5 -> x = 1.
  TimeSeries d{{0.0, 2.0}, {0.0, 2.0}};
  const auto s = split_by_threshold(d, 0.5);
  EXPECT_NEAR(s.boundaries[1], 1.0, 1e-14);
}

TEST(Rescale, CriticalNormsAreInvariant) {
  const auto g = make_grid(32.0, 4096);
  std::vector<double> times{0.0, 0.05, 0.1};
  const auto run = synthetic_run(gaussian_field(g), times);
  const auto r = rescale_run(run, 2.0);
  EXPECT_NEAR(hdot1_norm(r.snapshots[1]), hdot1_norm(run.snapshots[1]), 1e-12);
  EXPECT_NEAR(lebesgue_norm(r.snapshots[1], 6.0), lebesgue_norm(run.snapshots[1], 6.0), 1e-12);
  EXPECT_DOUBLE_EQ(r.times[2], 0.1 / 4.0);
  EXPECT_NEAR(mass(r.snapshots[0]), mass(run.snapshots[0]) / 4.0, 1e-13);
}

TEST(Inequalities, ValidityRegion) {
  EXPECT_NO_THROW(hardy(2.0));
  EXPECT_THROW(hardy(3.0), DomainError);
  EXPECT_NO_THROW(radial_sobolev(0.5, kInf, 1.0, 2.0));
  EXPECT_THROW(radial_sobolev(0.4, kInf, 1.0, 2.0), DomainError);
  EXPECT_THROW(radial_sobolev(-2.0, 1.0, 1.0, 1.0), DomainError);
}

TEST(Inequalities, HardyConstantRespected) {
  // Sharp Hardy constant at p = 2 in 3D is 2.
  const auto g = make_grid(32.0, 4096);
  std::vector<std::pair<std::string, RadialField>> corpus{
      {"gaussian", gaussian_field(g)},
      {"shell", oracle::sample(g, [](double r) { return oracle::gaussian(r - 4.0); })},
      {"zero", RadialField(g)}};
  const auto table = inequality_report(corpus, {hardy(2.0)});
  for (const auto& row : table.rows) EXPECT_LE(row.ratio, 2.0 + 1e-6) << row.field;
  EXPECT_EQ(table.rows.back().ratio, 0.0);
  EXPECT_FALSE(table.any_flagged);
}

TEST(Inequalities, RoughCorpusWithinBudget) {
  const auto g = make_grid(64.0, 4096);
  TestFunctionSpec s;
  s.family = Family::rough_spectral;
  const auto table = inequality_report({{"rough", sample_field(s, g)}});
  EXPECT_EQ(table.rows.size(), 3u);
  EXPECT_LT(table.max_ratio, table.budget);
}
