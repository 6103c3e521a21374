#pragma once

// Hot loops of the workbench. Every kernel ships twice: an OpenMP version used
// by the library and a plain serial version kept as the reference the tests
// and the benchmark compare against. Both produce identical results up to
// floating-point reassociation; reductions use a fixed chunking so the
// parallel result does not depend on the thread count.

#include "radnls/grid.hpp"

#include <span>

namespace radnls::kernels {

enum class Direction { out, in };

/// W[m] = sum_{j=1}^{n-1} chi_{<=2}(j m / (2n)) T[j]; W[0] = sum_j T[j].
/// Uses prefix sums for the plateau and evaluates the cutoff only on the
/// transition band 4n <= j m < 4.4n.
void window_sums(std::span<const cplx> T, std::span<cplx> W);
void window_sums_serial(std::span<const cplx> T, std::span<cplx> W);

/// Direct O(n^2) quadrature of the component integral
///   out[m] = scale * r_m^{-beta} * drho * sum_j kernel(rho_j r_m) G[j]
/// with kernel J(s) - K(s) (outgoing) or J(-s) + K(s) (incoming), built from
/// the closed-form kernel_J / kernel_K. out[0] is left to the caller.
void component_quadrature(std::span<const cplx> G, const RadialGrid& grid, double beta,
                          double scale, Direction dir, std::span<cplx> out);
void component_quadrature_serial(std::span<const cplx> G, const RadialGrid& grid, double beta,
                                 double scale, Direction dir, std::span<cplx> out);

/// u[m] *= exp(-i * mu * |u[m]|^4 * tau), the exact flow of the quintic term.
void nonlinear_phase(std::span<cplx> u, double mu, double tau);
void nonlinear_phase_serial(std::span<cplx> u, double mu, double tau);

/// sum_m weight[m] * |u[m]|^p.
double weighted_power_sum(std::span<const cplx> u, std::span<const double> weight, double p);
double weighted_power_sum_serial(std::span<const cplx> u, std::span<const double> weight,
                                 double p);

/// max_m |u[m]|.
double max_abs(std::span<const cplx> u);

} // namespace radnls::kernels
