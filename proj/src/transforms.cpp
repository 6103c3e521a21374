#include "radnls/transforms.hpp"

#include "radnls/cutoff.hpp"
#include "radnls/errors.hpp"
#include "radnls/spectral.hpp"

#include <cmath>
#include <string>

namespace radnls {

void DecompositionParams::validate() const {
  if (!(alpha < 3.0)) throw DomainError("alpha must satisfy alpha < 3");
  if (!(beta > -3.0)) throw DomainError("beta must satisfy beta > -3");
  if (!(s0 > 5.0 / 6.0 && s0 < 1.0)) throw DomainError("s0 must lie in (5/6, 1)");
  if (!(epsilon0 > 0.0)) throw DomainError("epsilon0 must be positive");
  if (!(delta0 > 0.0)) throw DomainError("delta0 must be positive");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(N >= 1.0) || std::exp2(std::round(std::log2(N))) != N)
    throw DomainError("N must be a positive power of two");
}

SineSpectrum sine_spectrum(const RadialField& f, double power) {
  const auto& g = f.grid;
  std::vector<cplx> h(g.n);
  for (std::size_t m = 1; m < g.n; ++m) {
    const double r = g.r(m);
    h[m] = (power == 1.0 ? r : std::pow(r, power)) * f[m];
  }
  SineSpectrum s{g, std::vector<cplx>(g.n)};
  spectral::sine_sum(std::span<const cplx>(h), std::span<cplx>(s.values));
  for (auto& z : s.values) z *= g.dr;
  return s;
}

void extrapolate_origin(std::vector<cplx>& values) {
  if (values.size() >= 3) values[0] = (4.0 * values[1] - values[2]) / 3.0;
}

cplx origin_from_sine_spectrum(std::span<const cplx> S, const RadialGrid& grid) {
  cplx sum = 0.0;
  for (std::size_t j = 1; j < S.size(); ++j) sum += static_cast<double>(j) * S[j];
  return 8.0 * kPi * grid.drho() * grid.drho() * sum;
}

RadialField field_from_sine_spectrum(const SineSpectrum& s) {
  const auto& g = s.grid;
  std::vector<cplx> h(g.n);
  spectral::sine_sum(std::span<const cplx>(s.values), std::span<cplx>(h));
  const double scale = 4.0 * g.drho();
  RadialField f(g);
  for (std::size_t m = 1; m < g.n; ++m) f[m] = scale * h[m] / g.r(m);
  f[0] = origin_from_sine_spectrum(s.values, g);
  return f;
}

SpectralField radial_fourier(const RadialField& f) {
  const auto s = sine_spectrum(f, 1.0);
  const auto& g = f.grid;
  SpectralField F{g.rho_max(), g.n, std::vector<cplx>(g.n)};
  cplx origin = 0.0;
  for (std::size_t m = 1; m < g.n; ++m) origin += g.r(m) * g.r(m) * f[m];
  F.values[0] = 4.0 * kPi * g.dr * origin;
  for (std::size_t j = 1; j < g.n; ++j) F.values[j] = 2.0 * s.values[j] / g.rho(j);
  return F;
}

RadialField inverse_radial_fourier(const SpectralField& F) {
  if (!(F.rho_max > 0.0) || F.n < 16) throw ConfigError("spectral field has no valid grid");
  const double dr = 1.0 / (2.0 * F.rho_max);
  const auto g = make_grid(dr * static_cast<double>(F.n), F.n);
  SineSpectrum s{g, std::vector<cplx>(g.n)};
  for (std::size_t j = 1; j < g.n; ++j) s.values[j] = 0.5 * g.rho(j) * F.values[j];
  return field_from_sine_spectrum(s);
}

RadialField inverse_radial_fourier(const SpectralField& F, const RadialGrid& grid) {
  if (F.n != grid.n || std::abs(F.rho_max - grid.rho_max()) > 1e-12 * grid.rho_max())
    throw ConfigError("spectral field is not conjugate to the requested grid");
  auto f = inverse_radial_fourier(F);
  f.grid = grid;
  return f;
}

SpectralField deformed_fourier(const RadialField& f, const DecompositionParams& p) {
  p.validate();
  const auto& g = f.grid;
  if (p.beta < 0.0) {
    double inner = 0.0, peak = 0.0;
    for (std::size_t m = 0; m < g.n; ++m) {
      const double a = std::abs(f[m]);
      peak = std::max(peak, a);
      inner = std::max(inner, cutoff_leq(0.25, g.r(m)) * a);
    }
    if (inner > 1e-8 * peak)
      throw PreconditionError("deformed_fourier with beta < 0 needs f to vanish on r <= 1/4");
  }
  const auto s = sine_spectrum(f, p.beta + 1.0);
  SpectralField F{g.rho_max(), g.n, std::vector<cplx>(g.n)};
  for (std::size_t j = 1; j < g.n; ++j)
    F.values[j] = 2.0 * std::pow(g.rho(j), p.alpha - 1.0) * s.values[j];
  if (p.alpha == 0.0) {
    cplx origin = 0.0;
    for (std::size_t m = 1; m < g.n; ++m) origin += std::pow(g.r(m), p.beta + 2.0) * f[m];
    F.values[0] = 4.0 * kPi * g.dr * origin;
  }
  return F;
}

double LPMode::multiplier(double rho) const {
  switch (kind) {
    case LPKind::leq: return cutoff_leq(a, rho);
    case LPKind::geq: return cutoff_geq(a, rho);
    case LPKind::band: return cutoff_band(a, rho);
    case LPKind::between: return cutoff_between(a, b, rho);
  }
  return 0.0;
}

RadialField apply_multiplier(const RadialField& f, const std::function<cplx(double)>& m) {
  auto s = sine_spectrum(f, 1.0);
  for (std::size_t j = 1; j < s.values.size(); ++j) s.values[j] *= m(s.grid.rho(j));
  return field_from_sine_spectrum(s);
}

RadialField lp_project(const RadialField& f, const LPMode& mode) {
  if (!(mode.a > 0.0) || (mode.kind == LPKind::between && !(mode.b > mode.a)))
    throw DomainError("projector thresholds must be positive and ordered");
  return apply_multiplier(f, [&](double rho) { return cplx(mode.multiplier(rho)); });
}

double sobolev_norm(const SineSpectrum& s, double order, bool homogeneous) {
  if (!(std::abs(order) <= 2.0)) throw DomainError("sobolev_norm supports |s| <= 2");
  const auto& g = s.grid;
  double acc = 0.0;
  for (std::size_t j = 1; j < g.n; ++j) {
    const double k = 2.0 * kPi * g.rho(j);
    double w = 1.0;
    if (order != 0.0)
      w = homogeneous ? std::pow(k, 2.0 * order) : std::pow(1.0 + k * k, order);
    acc += w * std::norm(s.values[j]);
  }
  return std::sqrt(16.0 * kPi * g.drho() * acc);
}

double sobolev_norm(const RadialField& f, double s, bool homogeneous) {
  if (!(std::abs(s) <= 2.0)) throw DomainError("sobolev_norm supports |s| <= 2");
  return sobolev_norm(sine_spectrum(f, 1.0), s, homogeneous);
}

double spectral_tail_fraction(const SineSpectrum& s) {
  const auto& g = s.grid;
  const double half = 0.5 * g.rho_max();
  double total = 0.0, tail = 0.0;
  for (std::size_t j = 1; j < g.n; ++j) {
    const double e = std::norm(s.values[j]);
    total += e;
    if (g.rho(j) > half) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

RadialField radial_derivative(const RadialField& f) {
  const auto s = sine_spectrum(f, 1.0);
  const auto& g = f.grid;
  std::vector<cplx> weighted(g.n), dh(g.n), h(g.n);
  for (std::size_t j = 1; j < g.n; ++j) weighted[j] = 2.0 * kPi * g.rho(j) * s.values[j];
  spectral::cosine_sum(std::span<const cplx>(weighted), std::span<cplx>(dh));
  spectral::sine_sum(std::span<const cplx>(s.values), std::span<cplx>(h));
  const double scale = 4.0 * g.drho();
  RadialField out(g);
  for (std::size_t m = 1; m < g.n; ++m) {
    const double r = g.r(m);
    out[m] = scale * (dh[m] - h[m] / r) / r;
  }
  out[0] = 0.0;
  return out;
}

RadialField fractional_derivative(const RadialField& f, double s) {
  return apply_multiplier(f, [s](double rho) { return cplx(std::pow(2.0 * kPi * rho, s)); });
}

} // namespace radnls
