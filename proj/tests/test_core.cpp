#include "oracles.hpp"

#include "radnls/cutoff.hpp"
#include "radnls/errors.hpp"
#include "radnls/grid.hpp"
#include "radnls/kernels.hpp"
#include "radnls/report.hpp"
#include "radnls/snapshot_io.hpp"
#include "radnls/spectral.hpp"
#include "radnls/test_functions.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

using namespace radnls;

TEST(Grid, ConjugatePairing) {
  const auto g = make_grid(128.0, 8192);
  EXPECT_DOUBLE_EQ(g.dr, 1.0 / 64.0);
  EXPECT_DOUBLE_EQ(g.drho(), 1.0 / 256.0);
  EXPECT_DOUBLE_EQ(g.rho_max(), 32.0);
  EXPECT_DOUBLE_EQ(g.rho(g.n - 1) + g.drho(), g.rho_max());
}

TEST(Grid, RejectsBadSizes) {
  EXPECT_THROW(make_grid(0.0, 64), ConfigError);
  EXPECT_THROW(make_grid(-1.0, 64), ConfigError);
  EXPECT_THROW(make_grid(8.0, 8), ConfigError);
}

TEST(Grid, FieldsOnDifferentGridsDoNotMix) {
  RadialField a(make_grid(8.0, 64)), b(make_grid(16.0, 64));
  EXPECT_THROW(a += b, ConfigError);
}

TEST(Grid, L2NormOfGaussian) {
  const auto g = make_grid(16.0, 4096);
  const auto f = oracle::sample(g, [](double r) { return oracle::gaussian(r); });
  EXPECT_NEAR(l2_norm(f), std::sqrt(oracle::gaussian_lp_pow(2.0)), 1e-12);
}

TEST(Cutoff, PlateausAndTransition) {
  EXPECT_EQ(cutoff_leq(2.0, 0.0), 1.0);
  EXPECT_EQ(cutoff_leq(2.0, 2.0), 1.0);
  EXPECT_EQ(cutoff_leq(2.0, 2.2), 0.0);
  EXPECT_EQ(cutoff_leq(2.0, -2.0), 1.0);
  const double mid = cutoff_leq(2.0, 2.1);
  EXPECT_GT(mid, 0.0);
  EXPECT_LT(mid, 1.0);
  EXPECT_NEAR(mid, 0.5, 1e-12);  // symmetric ramp
  EXPECT_THROW(cutoff_leq(0.0, 1.0), DomainError);
}

TEST(Cutoff, MonotoneAndComplementary) {
  double prev = 1.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.9 + 0.3 * i / 400.0;
    const double v = cutoff_leq(1.0, x);
    EXPECT_LE(v, prev + 1e-15);
    EXPECT_DOUBLE_EQ(v + cutoff_geq(1.0, x), 1.0);
    prev = v;
  }
}

TEST(Cutoff, DyadicBandsTelescope) {
  for (double x : {0.3, 1.05, 1.7, 3.3, 9.0, 17.5, 40.0}) {
    double sum = cutoff_leq(1.0, x);
    for (int k = 0; k < 8; ++k) sum += cutoff_band(std::ldexp(1.0, k), x);
    EXPECT_NEAR(sum, cutoff_leq(256.0, x), 1e-15) << x;
  }
  EXPECT_NEAR(cutoff_between(2.0, 8.0, 5.0), 1.0, 0.0);
}

TEST(Spectral, SineSumMatchesDirectSum) {
  const std::size_t n = 64;
  std::vector<double> in(n), out(n);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t m = 1; m < n; ++m) in[m] = u(gen);
  spectral::sine_sum(in, out);
  for (std::size_t j = 1; j < n; ++j) {
    double ref = 0.0;
    for (std::size_t m = 1; m < n; ++m) ref += std::sin(kPi * double(j * m) / n) * in[m];
    EXPECT_NEAR(out[j], ref, 1e-12);
  }
  EXPECT_EQ(out[0], 0.0);
}

TEST(Spectral, CosineSumMatchesDirectSum) {
  const std::size_t n = 48;
  std::vector<double> in(n), out(n);
  for (std::size_t j = 1; j < n; ++j) in[j] = std::cos(0.3 * j) / (1.0 + j);
  spectral::cosine_sum(in, out);
  for (std::size_t m = 0; m < n; ++m) {
    double ref = 0.0;
    for (std::size_t j = 1; j < n; ++j) ref += std::cos(kPi * double(j * m) / n) * in[j];
    EXPECT_NEAR(out[m], ref, 1e-12);
  }
}

TEST(TestFunctions, FamilyNamesRoundTrip) {
  for (auto f : {Family::gaussian, Family::smooth_bump, Family::power_tail, Family::rough_spectral})
    EXPECT_EQ(family_from_string(to_string(f)), f);
  EXPECT_THROW(family_from_string("square-wave"), ConfigError);
}

TEST(TestFunctions, ClosedFormFamilies) {
  const auto g = make_grid(32.0, 2048);
  TestFunctionSpec s;
  s.amplitude = 0.5;
  s.width = 2.0;
  const auto f = sample_field(s, g);
  for (std::size_t j = 0; j < g.n; j += 97)
    EXPECT_DOUBLE_EQ(f[j].real(), oracle::gaussian(g.r(j), 0.5, 2.0));
  s.family = Family::smooth_bump;
  const auto b = sample_field(s, g);
  EXPECT_DOUBLE_EQ(b[0].real(), 0.5);
  EXPECT_EQ(b[g.n / 2].real(), 0.0);
  s.family = Family::power_tail;
  s.sigma = 1.4;
  EXPECT_THROW(sample_field(s, g), DomainError);
}

TEST(TestFunctions, RoughSpectralIsDeterministicAndSeeded) {
  const auto g = make_grid(64.0, 4096);
  TestFunctionSpec s;
  s.family = Family::rough_spectral;
  const auto a = sample_field(s, g), b = sample_field(s, g);
  EXPECT_EQ(a.values, b.values);
  s.seed = 8;
  const auto c = sample_field(s, g);
  EXPECT_GT(oracle::max_diff(a, c), 1e-6);
  EXPECT_DOUBLE_EQ(rough_decay_exponent(0.9), 0.9 + 1.51);
}

TEST(SnapshotIO, BitExactRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "radnls_test_snapshot";
  std::filesystem::remove_all(dir);
  const auto g = make_grid(10.0 / 3.0, 333);
  RadialField f(g);
  for (std::size_t j = 0; j < g.n; ++j) f[j] = {std::sin(0.1 * j) / 3.0, std::nextafter(1.0 / 7.0, 1.0)};
  write_snapshot(dir / "u", f, 0.125, "u");
  const auto s = read_snapshot(dir / "u");
  EXPECT_EQ(s.field.grid, g);
  EXPECT_EQ(s.field.values, f.values);
  EXPECT_EQ(s.t, 0.125);
  EXPECT_EQ(s.role, "u");
  EXPECT_EQ(std::filesystem::file_size(dir / "u.bin"), g.n * 16);

  SpectralField F{g.rho_max(), g.n, f.values};
  write_spectrum(dir / "F", F, 1.0, "data");
  const auto r = read_spectrum(dir / "F");
  EXPECT_EQ(r.field.values, F.values);
  EXPECT_EQ(r.field.rho_max, F.rho_max);
  EXPECT_THROW(read_snapshot(dir / "missing"), Error);
}

TEST(SnapshotIO, LittleEndianLayout) {
  const auto bytes = encode_values({cplx(1.0, -2.0)});
  ASSERT_EQ(bytes.size(), 16u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[7]), 0x3f);  // 1.0 = 0x3ff0...
  EXPECT_EQ(static_cast<unsigned char>(bytes[15]), 0xc0); // -2.0 = 0xc000...
  EXPECT_EQ(decode_values(bytes)[0], cplx(1.0, -2.0));
  EXPECT_THROW(decode_values(std::string(15, '\0')), Error);
}

TEST(Report, NumbersPinnedTo17Digits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  Json j;
  j["b"] = 0.1;
  j["a"] = std::nan("");
  j["list"] = {1, 2.5};
  EXPECT_EQ(dump_json(j), "{\n  \"b\": 0.10000000000000001,\n  \"a\": null,\n  \"list\": [\n    1,\n    2.5\n  ]\n}");
  EXPECT_THROW(parse_json("{oops"), ConfigError);
}

TEST(Report, CsvAndSha) {
  CsvTable t;
  t.add("x", {1.0, 2.0});
  t.add("y", {0.5, std::nan("")});
  EXPECT_EQ(t.render(), "x,y\n1,0.5\n2,nan\n");
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Report, SvgIsSelfContained) {
  const auto svg = loglog_svg("t<1>", "x", "y", {{"s", {1, 10, 100}, {1, 0.1, 0.01}}});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("t&lt;1&gt;"), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);
}

TEST(Kernels, ParallelMatchesSerial) {
  const auto g = make_grid(16.0, 1024);
  std::vector<cplx> T(g.n), a(g.n), b(g.n);
  for (std::size_t j = 1; j < g.n; ++j) T[j] = cplx(std::cos(0.01 * j), std::sin(0.02 * j)) / double(j);
  kernels::window_sums(T, a);
  kernels::window_sums_serial(T, b);
  EXPECT_EQ(a, b);
  std::vector<cplx> qa(g.n), qb(g.n);
  kernels::component_quadrature(T, g, 0.0, 1.0, kernels::Direction::out, qa);
  kernels::component_quadrature_serial(T, g, 0.0, 1.0, kernels::Direction::out, qb);
  EXPECT_EQ(qa, qb);
  auto u = T, v = T;
  kernels::nonlinear_phase(u, 1.0, 0.01);
  kernels::nonlinear_phase_serial(v, 1.0, 0.01);
  EXPECT_EQ(u, v);
  std::vector<double> w(g.n, 1.0);
  EXPECT_NEAR(kernels::weighted_power_sum(T, w, 6.0), kernels::weighted_power_sum_serial(T, w, 6.0),
              1e-14);
}

TEST(Kernels, WindowSumsMatchDefinition) {
  const std::size_t n = 200;
  std::vector<cplx> T(n), W(n);
  for (std::size_t j = 1; j < n; ++j) T[j] = 1.0 / (1.0 + j);
  kernels::window_sums_serial(T, W);
  for (std::size_t m : {0u, 1u, 3u, 9u, 17u, 50u, 199u}) {
    cplx ref = 0.0;
    for (std::size_t j = 1; j < n; ++j) ref += cutoff_leq(2.0, double(j * m) / (2.0 * n)) * T[j];
    EXPECT_NEAR(std::abs(W[m] - ref), 0.0, 1e-13) << m;
  }
}

TEST(Kernels, NonlinearPhaseIsUnitary) {
  std::vector<cplx> u{cplx(0.3, 0.4), cplx(-1.0, 0.0), cplx(0.0, 2.0)};
  const auto before = u;
  kernels::nonlinear_phase(u, -1.0, 0.37);
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_NEAR(std::abs(u[i]), std::abs(before[i]), 1e-15);
    const double a4 = std::pow(std::abs(before[i]), 4);
    EXPECT_NEAR(std::abs(u[i] - before[i] * std::polar(1.0, 0.37 * a4)), 0.0, 1e-14);
  }
}
