// OpenMP kernels against their serial references.

#include "radnls/kernels.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

namespace {

using radnls::cplx;
namespace k = radnls::kernels;

std::vector<cplx> wave(std::size_t n) {
  std::vector<cplx> u(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = 0.01 * static_cast<double>(j);
    u[j] = cplx(std::exp(-x * x / 50.0) * std::cos(x), std::sin(0.3 * x) / (1.0 + x));
  }
  return u;
}

template <bool Parallel>
void BM_window_sums(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto T = wave(n);
  std::vector<cplx> W(n);
  for (auto _ : state) {
    if constexpr (Parallel) k::window_sums(T, W);
    else k::window_sums_serial(T, W);
    benchmark::DoNotOptimize(W.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void BM_component_quadrature(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = radnls::make_grid(0.05 * static_cast<double>(n), n);
  const auto G = wave(n);
  std::vector<cplx> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) k::component_quadrature(G, grid, 0.0, 1.0, k::Direction::out, out);
    else k::component_quadrature_serial(G, grid, 0.0, 1.0, k::Direction::out, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_nonlinear_phase(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto u = wave(n);
  for (auto _ : state) {
    if constexpr (Parallel) k::nonlinear_phase(u, 1.0, 1e-3);
    else k::nonlinear_phase_serial(u, 1.0, 1e-3);
    benchmark::DoNotOptimize(u.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

template <bool Parallel>
void BM_weighted_power_sum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = wave(n);
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = static_cast<double>(j * j);
  for (auto _ : state) {
    double s = Parallel ? k::weighted_power_sum(u, w, 6.0) : k::weighted_power_sum_serial(u, w, 6.0);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

} // namespace

BENCHMARK(BM_window_sums<true>)->Name("window_sums/parallel")->Range(1 << 12, 1 << 18);
BENCHMARK(BM_window_sums<false>)->Name("window_sums/serial")->Range(1 << 12, 1 << 18);
BENCHMARK(BM_component_quadrature<true>)->Name("component_quadrature/parallel")->Range(256, 2048);
BENCHMARK(BM_component_quadrature<false>)->Name("component_quadrature/serial")->Range(256, 2048);
BENCHMARK(BM_nonlinear_phase<true>)->Name("nonlinear_phase/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_nonlinear_phase<false>)->Name("nonlinear_phase/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_weighted_power_sum<true>)->Name("weighted_power_sum/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_weighted_power_sum<false>)->Name("weighted_power_sum/serial")->Range(1 << 12, 1 << 20);

BENCHMARK_MAIN();
