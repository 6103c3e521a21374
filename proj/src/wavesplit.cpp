#include "radnls/wavesplit.hpp"

#include "radnls/cutoff.hpp"
#include "radnls/errors.hpp"
#include "radnls/norms.hpp"
#include "radnls/spectral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace radnls {

cplx kernel_J(double s) {
  const double theta = 2.0 * kPi * s;
  if (theta == 0.0) return {1.0, 0.0};
  const double half = std::sin(0.5 * theta);
  return {std::sin(theta) / theta, 2.0 * half * half / theta};
}

cplx kernel_J_quadrature(double s) {
  using boost::math::quadrature::gauss_kronrod;
  const double w = 2.0 * kPi * s;
  auto re = [w](double t) { return std::cos(w * std::sin(t)) * std::cos(t); };
  auto im = [w](double t) { return std::sin(w * std::sin(t)) * std::cos(t); };
  const double a = gauss_kronrod<double, 61>::integrate(re, 0.0, kPi / 2.0, 10, 1e-13);
  const double b = gauss_kronrod<double, 61>::integrate(im, 0.0, kPi / 2.0, 10, 1e-13);
  return {a, b};
}

cplx kernel_K(double s) {
  if (s < 0.0) throw DomainError("kernel_K requires a non-negative argument");
  const double gate = cutoff_geq(2.0, s);
  if (gate == 0.0) return {0.0, 0.0};
  return {0.0, gate / (2.0 * kPi * s)};
}

namespace {

double weighted_inner(const RadialField& a, const RadialField& b) {
  double acc = 0.0;
  for (std::size_t j = 1; j < a.size(); ++j) {
    const double r = a.grid.r(j);
    acc += r * r * std::real(a[j] * std::conj(b[j]));
  }
  return acc;
}

double measure_calibration() {
  const auto grid = make_grid(8.0, 512);
  RadialField f(grid);
  for (std::size_t j = 0; j < grid.n; ++j) f[j] = std::exp(-kPi * grid.r(j) * grid.r(j));
  DecompositionParams p;
  const auto F = deformed_fourier(f, p);
  std::vector<cplx> G(grid.n);
  for (std::size_t j = 1; j < grid.n; ++j)
    G[j] = std::pow(grid.rho(j), 2.0 - p.alpha) * F.values[j];
  RadialField out(grid), in(grid);
  kernels::component_quadrature_serial(G, grid, p.beta, 1.0, Direction::out, out.values);
  kernels::component_quadrature_serial(G, grid, p.beta, 1.0, Direction::in, in.values);
  return weighted_inner(out + in, f) / weighted_inner(f, f);
}

// Spectral mass of f above rho_max / 2, relative to the mass of the data the
// computation started from.
double tail_fraction(const RadialField& f, double reference_mass) {
  const auto s = sine_spectrum(f, 1.0);
  const double half = 0.5 * f.grid.rho_max();
  double tail = 0.0;
  for (std::size_t j = 1; j < f.grid.n; ++j)
    if (f.grid.rho(j) > half) tail += std::norm(s.values[j]);
  tail *= 16.0 * kPi * f.grid.drho();
  return reference_mass > 0.0 ? tail / reference_mass : 0.0;
}

double check_resolution(const RadialField& f, const DecompositionParams& p, double reference_mass) {
  const double tail = tail_fraction(f, reference_mass);
  if (tail > p.resolution_tol) {
    std::ostringstream msg;
    msg << "component integral under-resolved: spectral mass above rho_max/2 is " << tail
        << " of the data mass (limit " << p.resolution_tol
        << "); refine dr so that rho_max = 1/(2 dr) at least doubles";
    throw ResolutionError(msg.str());
  }
  return tail;
}

// Masked sine spectrum T_j = m(rho_j) S_j of r^{beta+1} f. The rho powers of
// the deformed transform and of the integration weight cancel, so alpha
// drops out of the components.
std::vector<cplx> masked_spectrum(const RadialField& f, const DecompositionParams& p,
                                  const SpectralMask& mask) {
  auto s = sine_spectrum(f, p.beta + 1.0);
  if (mask)
    for (std::size_t j = 1; j < s.values.size(); ++j) s.values[j] *= mask(s.grid.rho(j));
  return std::move(s.values);
}

struct ComponentSums {
  std::vector<cplx> sin, cos, win;
};

ComponentSums component_sums(const std::vector<cplx>& T) {
  ComponentSums c{std::vector<cplx>(T.size()), std::vector<cplx>(T.size()),
                  std::vector<cplx>(T.size())};
  spectral::sine_sum(std::span<const cplx>(T), std::span<cplx>(c.sin));
  spectral::cosine_sum(std::span<const cplx>(T), std::span<cplx>(c.cos));
  kernels::window_sums(T, c.win);
  return c;
}

RadialField assemble(const RadialGrid& g, const ComponentSums& c, double beta, Direction dir) {
  const double scale = g.drho() / (kPi * calibration_constant());
  const cplx i(0.0, 1.0);
  RadialField out(g);
  for (std::size_t m = 1; m < g.n; ++m) {
    const double r = g.r(m);
    const double weight = beta == 0.0 ? 1.0 / r : std::pow(r, -beta - 1.0);
    const cplx odd = i * (c.win[m] - c.cos[m]);
    out[m] = scale * weight * (dir == Direction::out ? c.sin[m] + odd : c.sin[m] - odd);
  }
  extrapolate_origin(out.values);
  return out;
}

SplitOutput components(const RadialField& f, const DecompositionParams& p, const SpectralMask& mask,
                       double reference_mass) {
  p.validate();
  if (p.beta < 0.0) (void)deformed_fourier(f, p);  // origin precondition
  const double tail = check_resolution(f, p, reference_mass);
  const auto sums = component_sums(masked_spectrum(f, p, mask));
  SplitOutput s{assemble(f.grid, sums, p.beta, Direction::out),
                assemble(f.grid, sums, p.beta, Direction::in), 0.0, tail};
  s.reconstruction_error = relative_l2_error(s.out + s.in_, f, f);
  return s;
}

} // namespace

double calibration_constant() {
  static const double c = measure_calibration();
  return c;
}

SpectralMask band_mask(int k_lo, int k_hi) {
  if (k_lo > k_hi) throw DomainError("band mask needs k_lo <= k_hi");
  return [k_lo, k_hi](double rho) {
    double m = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) m += cutoff_band(std::ldexp(1.0, k), rho);
    return m;
  };
}

SplitOutput wave_components(const RadialField& f, const DecompositionParams& p,
                            const SpectralMask& mask) {
  return components(f, p, mask, mass(f));
}

RadialField outgoing_component(const RadialField& f, const DecompositionParams& p) {
  return wave_components(f, p).out;
}

RadialField incoming_component(const RadialField& f, const DecompositionParams& p) {
  return wave_components(f, p).in_;
}

RadialField banded_component(const RadialField& f, int k_lo, int k_hi, Direction dir,
                             const DecompositionParams& p) {
  auto s = wave_components(f, p, band_mask(k_lo, k_hi));
  return dir == Direction::out ? std::move(s.out) : std::move(s.in_);
}

RadialField component_reference(const RadialField& f, Direction dir,
                                const DecompositionParams& p, const SpectralMask& mask) {
  check_resolution(f, p, mass(f));
  const auto& g = f.grid;
  const auto F = deformed_fourier(f, p);
  std::vector<cplx> G(g.n);
  for (std::size_t j = 1; j < g.n; ++j) {
    const double rho = g.rho(j);
    G[j] = (mask ? mask(rho) : 1.0) * std::pow(rho, 2.0 - p.alpha) * F.values[j];
  }
  RadialField out(g);
  kernels::component_quadrature(G, g, p.beta, 1.0 / calibration_constant(), dir, out.values);
  extrapolate_origin(out.values);
  return out;
}

BandRemainder band_remainder(const RadialField& f, int k, const DecompositionParams& p,
                             Direction dir) {
  if (k < 0) throw DomainError("band_remainder needs k >= 0");
  const auto outer = multiply_radial(f, [](double r) { return cutoff_geq(1.0, r); });
  auto projected = lp_project(outer, LPMode::band(std::ldexp(1.0, k)));
  const auto full = wave_components(projected, p);
  const auto banded = wave_components(projected, p, band_mask(k - 1, k + 1));
  BandRemainder b;
  b.h = dir == Direction::out ? full.out - banded.out : full.in_ - banded.in_;
  const double base = l2_norm(projected);
  b.ratio = base > 0.0 ? sobolev_norm(b.h, 2.0, false) / base : 0.0;
  b.projected = std::move(projected);
  return b;
}

SplitOutput modified_components(const RadialField& f, const DecompositionParams& p) {
  p.validate();
  const double eps = p.epsilon0;
  const auto inner = multiply_radial(f, [eps](double r) { return cutoff_leq(eps, r); });
  const auto outer = multiply_radial(f, [eps](double r) { return cutoff_geq(eps, r); });
  const auto half = 0.5 * (lp_project(f, LPMode::leq(1.0)) + lp_project(inner, LPMode::geq(1.0)));
  const auto waves = components(lp_project(outer, LPMode::geq(1.0)), p, {}, mass(f));
  SplitOutput s{half + waves.out, half + waves.in_, 0.0, waves.spectral_tail};
  s.reconstruction_error = relative_l2_error(s.out + s.in_, f, f);
  return s;
}

double high_tail_norm(const RadialField& f, double N, double s0) {
  const auto outer = multiply_radial(f, [](double r) { return cutoff_geq(1.0, r); });
  return sobolev_norm(lp_project(outer, LPMode::geq(N)), s0, false);
}

double choose_N(const RadialField& f, const DecompositionParams& p) {
  if (!(p.delta0 > 0.0)) throw DomainError("delta0 must be positive");
  const double limit = 0.5 * f.grid.rho_max() / 1.1;
  double tail = 0.0;
  for (double N = 1.0; N <= limit; N *= 2.0) {
    tail = high_tail_norm(f, N, p.s0);
    if (tail <= p.delta0) return N;
  }
  std::ostringstream msg;
  msg << "no dyadic N <= " << limit << " brings the H^s0 tail below delta0 = " << p.delta0
      << "; floor " << tail;
  throw InfeasibleError(msg.str(), tail);
}

DataSplit split_initial_data(const RadialField& f, const DecompositionParams& p,
                             std::optional<double> N) {
  p.validate();
  if (p.epsilon0 != 1.0) throw PreconditionError("split_initial_data requires epsilon0 = 1");
  DataSplit d;
  d.N = N ? *N : choose_N(f, p);
  auto q = p;
  q.N = d.N;
  q.validate();
  const auto inner = multiply_radial(f, [](double r) { return cutoff_leq(1.0, r); });
  const auto outer = multiply_radial(f, [](double r) { return cutoff_geq(1.0, r); });
  const auto high = lp_project(outer, LPMode::geq(d.N));
  d.tail_H_s0 = sobolev_norm(high, p.s0, false);
  const double data_mass = mass(f);
  d.v0 = components(high, p, {}, data_mass).out;
  const auto half = 0.5 * (lp_project(f, LPMode::leq(1.0)) + lp_project(inner, LPMode::geq(1.0)));
  if (d.N > 1.0)
    d.w0 = half + components(lp_project(outer, LPMode::between(1.0, d.N)), p, {}, data_mass).out;
  else
    d.w0 = half;
  d.w0_hdot1 = sobolev_norm(d.w0, 1.0, true);
  return d;
}

} // namespace radnls
