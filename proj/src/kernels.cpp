#include "radnls/kernels.hpp"

#include "radnls/cutoff.hpp"
#include "radnls/errors.hpp"
#include "radnls/wavesplit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace radnls::kernels {

namespace {

constexpr std::size_t kChunk = 4096;

void check_window_sizes(std::span<const cplx> T, std::span<cplx> W) {
  if (T.size() != W.size() || T.size() < 3) throw ConfigError("window_sums: size mismatch");
}

std::vector<cplx> prefix_sums(std::span<const cplx> T) {
  std::vector<cplx> P(T.size());
  cplx acc = 0.0;
  for (std::size_t j = 1; j < T.size(); ++j) {
    acc += T[j];
    P[j] = acc;
  }
  return P;
}

// One output node of the windowed sum; shared by both loop drivers.
cplx window_at(std::size_t m, std::span<const cplx> T, const std::vector<cplx>& P) {
  const std::uint64_t n = T.size();
  if (m == 0) return P[n - 1];
  const std::uint64_t mm = m;
  const std::uint64_t plateau_end = std::min<std::uint64_t>((4 * n) / mm, n - 1);
  const std::uint64_t band_end = std::min<std::uint64_t>((44 * n - 1) / (10 * mm), n - 1);
  cplx acc = plateau_end >= 1 ? P[plateau_end] : cplx(0.0);
  const double inv = 1.0 / (2.0 * static_cast<double>(n));
  for (std::uint64_t j = plateau_end + 1; j <= band_end; ++j) {
    const double s = static_cast<double>(j * mm) * inv;
    acc += cutoff_leq(2.0, s) * T[j];
  }
  return acc;
}

cplx component_kernel(double s, Direction dir) {
  return dir == Direction::out ? kernel_J(s) - kernel_K(s) : kernel_J(-s) + kernel_K(s);
}

cplx quadrature_at(std::size_t m, std::span<const cplx> G, const RadialGrid& grid, double beta,
                   double scale, Direction dir) {
  const double r = grid.r(m);
  cplx acc = 0.0;
  for (std::size_t j = 1; j < grid.n; ++j) acc += component_kernel(grid.rho(j) * r, dir) * G[j];
  const double weight = beta == 0.0 ? 1.0 : std::pow(r, -beta);
  return scale * weight * grid.drho() * acc;
}

void check_quadrature_sizes(std::span<const cplx> G, const RadialGrid& grid,
                            std::span<cplx> out) {
  if (G.size() != grid.n || out.size() != grid.n)
    throw ConfigError("component_quadrature: size mismatch");
}

inline double power_term(cplx z, double p) {
  const double a2 = std::norm(z);
  if (p == 2.0) return a2;
  if (p == 6.0) return a2 * a2 * a2;
  if (p == 12.0) {
    const double a6 = a2 * a2 * a2;
    return a6 * a6;
  }
  return std::pow(std::sqrt(a2), p);
}

} // namespace

void window_sums(std::span<const cplx> T, std::span<cplx> W) {
  check_window_sizes(T, W);
  const auto P = prefix_sums(T);
  const auto n = static_cast<std::int64_t>(T.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t m = 0; m < n; ++m) W[m] = window_at(static_cast<std::size_t>(m), T, P);
}

void window_sums_serial(std::span<const cplx> T, std::span<cplx> W) {
  check_window_sizes(T, W);
  const auto P = prefix_sums(T);
  for (std::size_t m = 0; m < T.size(); ++m) W[m] = window_at(m, T, P);
}

void component_quadrature(std::span<const cplx> G, const RadialGrid& grid, double beta,
                          double scale, Direction dir, std::span<cplx> out) {
  check_quadrature_sizes(G, grid, out);
  const auto n = static_cast<std::int64_t>(grid.n);
#pragma omp parallel for schedule(static)
  for (std::int64_t m = 1; m < n; ++m)
    out[m] = quadrature_at(static_cast<std::size_t>(m), G, grid, beta, scale, dir);
}

void component_quadrature_serial(std::span<const cplx> G, const RadialGrid& grid, double beta,
                                 double scale, Direction dir, std::span<cplx> out) {
  check_quadrature_sizes(G, grid, out);
  for (std::size_t m = 1; m < grid.n; ++m) out[m] = quadrature_at(m, G, grid, beta, scale, dir);
}

void nonlinear_phase(std::span<cplx> u, double mu, double tau) {
  if (mu == 0.0) return;
  const auto n = static_cast<std::int64_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t m = 0; m < n; ++m) {
    const double a2 = std::norm(u[m]);
    u[m] *= std::polar(1.0, -mu * a2 * a2 * tau);
  }
}

void nonlinear_phase_serial(std::span<cplx> u, double mu, double tau) {
  if (mu == 0.0) return;
  for (auto& z : u) {
    const double a2 = std::norm(z);
    z *= std::polar(1.0, -mu * a2 * a2 * tau);
  }
}

double weighted_power_sum(std::span<const cplx> u, std::span<const double> weight, double p) {
  if (u.size() != weight.size()) throw ConfigError("weighted_power_sum: size mismatch");
  const std::size_t chunks = (u.size() + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  const auto nc = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < nc; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(u.size(), lo + kChunk);
    double acc = 0.0;
    for (std::size_t m = lo; m < hi; ++m) acc += weight[m] * power_term(u[m], p);
    partial[static_cast<std::size_t>(c)] = acc;
  }
  double total = 0.0;
  for (double x : partial) total += x;
  return total;
}

double weighted_power_sum_serial(std::span<const cplx> u, std::span<const double> weight,
                                 double p) {
  if (u.size() != weight.size()) throw ConfigError("weighted_power_sum: size mismatch");
  double total = 0.0;
  for (std::size_t m = 0; m < u.size(); ++m) total += weight[m] * power_term(u[m], p);
  return total;
}

double max_abs(std::span<const cplx> u) {
  double best = 0.0;
  for (const auto& z : u) best = std::max(best, std::abs(z));
  return best;
}

} // namespace radnls::kernels
