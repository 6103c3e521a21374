#include "radnls/norms.hpp"

#include "radnls/cutoff.hpp"
#include "radnls/errors.hpp"
#include "radnls/kernels.hpp"
#include "radnls/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace radnls {

namespace {

bool supported_exponent(double p) {
  static const double allowed[] = {1.0, 1.2, 2.0, 2.4, 3.0, 6.0, 8.0, 10.0, 12.0};
  if (p == kInf) return true;
  return std::any_of(std::begin(allowed), std::end(allowed),
                     [p](double a) { return std::abs(a - p) < 1e-12; });
}

std::vector<double> volume_weights(const RadialGrid& g) {
  std::vector<double> w(g.n);
  for (std::size_t j = 0; j < g.n; ++j) w[j] = 4.0 * kPi * g.dr * g.r(j) * g.r(j);
  return w;
}

double interpolate(const TimeSeries& g, double t) {
  const auto it = std::lower_bound(g.times.begin(), g.times.end(), t);
  const auto k = static_cast<std::size_t>(it - g.times.begin());
  if (k < g.times.size() && g.times[k] == t) return g.values[k];
  if (k == 0) return g.values.front();
  if (k >= g.times.size()) return g.values.back();
  const double t0 = g.times[k - 1], t1 = g.times[k];
  const double a = (t - t0) / (t1 - t0);
  return (1.0 - a) * g.values[k - 1] + a * g.values[k];
}

// Samples of g restricted to [a, b], endpoints included.
TimeSeries restrict(const TimeSeries& g, double a, double b) {
  if (g.times.empty() || g.times.size() != g.values.size())
    throw ConfigError("time series is empty or inconsistent");
  const double tol = 1e-12 * std::max(1.0, std::abs(g.times.back()));
  if (a < g.times.front() - tol || b > g.times.back() + tol || b < a) {
    std::ostringstream msg;
    msg << "interval [" << a << ", " << b << "] is not covered by snapshots on ["
        << g.times.front() << ", " << g.times.back() << "]";
    throw ConfigError(msg.str());
  }
  TimeSeries out;
  out.times.push_back(a);
  out.values.push_back(interpolate(g, a));
  for (std::size_t k = 0; k < g.times.size(); ++k)
    if (g.times[k] > a && g.times[k] < b) {
      out.times.push_back(g.times[k]);
      out.values.push_back(g.values[k]);
    }
  if (b > a) {
    out.times.push_back(b);
    out.values.push_back(interpolate(g, b));
  }
  for (std::size_t k = 1; k < out.times.size(); ++k)
    if (out.times[k] - out.times[k - 1] > kMaxSnapshotGap + 1e-12) {
      std::ostringstream msg;
      msg << "snapshot gap " << out.times[k] - out.times[k - 1] << " at t = " << out.times[k - 1]
          << " exceeds " << kMaxSnapshotGap << " (need at least 8 snapshots per unit time)";
      throw ResolutionError(msg.str());
    }
  return out;
}

// Indices of the snapshots needed to cover [a, b].
std::pair<std::size_t, std::size_t> covering_range(const std::vector<double>& times, double a,
                                                   double b) {
  std::size_t lo = 0, hi = times.size();
  while (lo + 1 < times.size() && times[lo + 1] <= a) ++lo;
  while (hi > lo + 1 && times[hi - 2] >= b) --hi;
  return {lo, hi};
}

TimeSeries norm_series(const EvolutionResult& run, double t_a, double t_b,
                       const std::function<double(std::size_t)>& value) {
  const auto [lo, hi] = covering_range(run.times, t_a, t_b);
  TimeSeries s;
  s.times.assign(run.times.begin() + static_cast<std::ptrdiff_t>(lo),
                 run.times.begin() + static_cast<std::ptrdiff_t>(hi));
  s.values.resize(hi - lo);
  for (std::size_t k = lo; k < hi; ++k) s.values[k - lo] = value(k);
  return s;
}

double weighted_norm(const RadialField& g, std::span<const double> weight, double p) {
  if (p == kInf) {
    double best = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) best = std::max(best, weight[j] * std::abs(g[j]));
    return best;
  }
  const auto vol = volume_weights(g.grid);
  std::vector<double> w(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) w[j] = vol[j] * std::pow(weight[j], p);
  return std::pow(kernels::weighted_power_sum(g.values, w, p), 1.0 / p);
}

double trapezoid(const TimeSeries& s) {
  double acc = 0.0;
  for (std::size_t k = 1; k < s.times.size(); ++k)
    acc += 0.5 * (s.times[k] - s.times[k - 1]) * (s.values[k] + s.values[k - 1]);
  return acc;
}

} // namespace

double lebesgue_norm(const RadialField& f, double p, bool gradient) {
  if (!supported_exponent(p)) throw DomainError("unsupported Lebesgue exponent");
  const RadialField g = gradient ? radial_derivative(f) : f;
  if (p == kInf) return kernels::max_abs(g.span());
  const auto w = volume_weights(g.grid);
  return std::pow(kernels::weighted_power_sum(g.values, w, p), 1.0 / p);
}

double weighted_lebesgue_norm(const RadialField& f, std::span<const double> weight, double p) {
  if (!(p >= 1.0)) throw DomainError("unsupported Lebesgue exponent");
  if (weight.size() != f.size()) throw ConfigError("weight length does not match the field");
  return weighted_norm(f, weight, p);
}

double mass(const RadialField& f) {
  const double n = l2_norm(f);
  return n * n;
}

double hdot1_norm(const RadialField& f) { return sobolev_norm(f, 1.0, true); }

double energy(const RadialField& f, double mu) {
  const double k = hdot1_norm(f);
  double e = 0.5 * k * k;
  if (mu != 0.0) e += mu / 6.0 * std::pow(lebesgue_norm(f, 6.0), 6.0);
  return e;
}

double time_norm(const TimeSeries& g, double q, double t_a, double t_b) {
  const auto s = restrict(g, t_a, t_b);
  if (q == kInf) return *std::max_element(s.values.begin(), s.values.end());
  if (!(q >= 1.0)) throw DomainError("time exponent must be >= 1");
  TimeSeries powered = s;
  for (auto& v : powered.values) v = std::pow(v, q);
  return std::pow(trapezoid(powered), 1.0 / q);
}

TimeSeries spatial_norm_series(const EvolutionResult& run, double p, bool gradient) {
  TimeSeries s{run.times, std::vector<double>(run.snapshots.size())};
  const auto n = static_cast<std::int64_t>(run.snapshots.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < n; ++k) s.values[k] = lebesgue_norm(run.snapshots[k], p, gradient);
  return s;
}

double mixed_norm(const EvolutionResult& run, const MixedNormSpec& spec) {
  if (!supported_exponent(spec.p)) throw DomainError("unsupported Lebesgue exponent");
  const auto s = norm_series(run, spec.t_a, spec.t_b, [&](std::size_t k) {
    return lebesgue_norm(run.snapshots[k], spec.p, spec.gradient);
  });
  return time_norm(s, spec.q, spec.t_a, spec.t_b);
}

double s_norm(const EvolutionResult& run, double t_a, double t_b) {
  return mixed_norm(run, {2.0, 6.0, t_a, t_b, true}) + mixed_norm(run, {8.0, 12.0, t_a, t_b, false});
}

double s0_strichartz_norm(const EvolutionResult& run, double t_a, double t_b) {
  static const double pairs[][2] = {{kInf, 2.0}, {8.0, 2.4}, {4.0, 3.0}, {2.0, 6.0}};
  double best = 0.0;
  for (const auto& qp : pairs) best = std::max(best, mixed_norm(run, {qp[0], qp[1], t_a, t_b, false}));
  return best;
}

YNorm y_norm_from_raw(const std::array<double, 4>& raw, double N, double s0) {
  YNorm y;
  y.raw = raw;
  y.exponent = {s0 - 5.0 / 6.0, s0 - 7.0 / 24.0, s0 - 1.0 / 3.0, s0};
  for (std::size_t i = 0; i < 4; ++i) {
    y.terms[i] = std::pow(N, y.exponent[i]) * raw[i];
    y.total += y.terms[i];
  }
  return y;
}

YNorm y_norm(const EvolutionResult& run, double N, double s0, double t_a, double t_b) {
  return y_norm_from_raw({mixed_norm(run, {2.0, 6.0, t_a, t_b, true}),
                          mixed_norm(run, {8.0, 12.0, t_a, t_b, false}),
                          mixed_norm(run, {kInf, 6.0, t_a, t_b, false}),
                          mixed_norm(run, {2.0, kInf, t_a, t_b, false})},
                         N, s0);
}

XNorm x_norm_from_raw(const std::array<double, 2>& raw, double N, double s0) {
  XNorm x;
  x.raw = raw;
  x.exponent = {3.0 * (s0 - 1.0), 9.0 / 8.0 * (s0 - 1.0)};
  for (std::size_t i = 0; i < 2; ++i) {
    x.terms[i] = std::pow(N, x.exponent[i]) * raw[i];
    x.total += x.terms[i];
  }
  return x;
}

XNorm x_norm(const EvolutionResult& run, double N, double s0, double t_a, double t_b) {
  const auto h1 = norm_series(run, t_a, t_b, [&](std::size_t k) { return hdot1_norm(run.snapshots[k]); });
  return x_norm_from_raw({time_norm(h1, kInf, t_a, t_b), mixed_norm(run, {8.0, 8.0, t_a, t_b, false})},
                         N, s0);
}

double region_radius(double delta, int k, double t) {
  return delta * (1.0 + std::ldexp(1.0, k) * t);
}

double region_masked_spatial_norm(const RadialField& u, double t, double delta, int k, Side side,
                                  double p, bool gradient) {
  if (!(delta > 0.0)) throw DomainError("region radius factor delta must be positive");
  const double R = region_radius(delta, k, t);
  const auto masked = multiply_radial(u, [R, side](double r) {
    return side == Side::inside ? cutoff_leq(R, r) : cutoff_geq(R, r);
  });
  return lebesgue_norm(masked, p, gradient);
}

double region_masked_norm(const EvolutionResult& run, double delta, int k, Side side,
                          const MixedNormSpec& spec) {
  const auto s = norm_series(run, spec.t_a, spec.t_b, [&](std::size_t i) {
    return region_masked_spatial_norm(run.snapshots[i], run.times[i], delta, k, side, spec.p,
                                      spec.gradient);
  });
  return time_norm(s, spec.q, spec.t_a, spec.t_b);
}

double morawetz_functional(const RadialField& u) {
  const auto du = radial_derivative(u);
  double acc = 0.0;
  for (std::size_t j = 1; j < u.size(); ++j) {
    const double r = u.grid.r(j);
    acc += r * r * std::imag(du[j] * std::conj(u[j]));
  }
  return 4.0 * kPi * u.grid.dr * acc;
}

double morawetz_density(const RadialField& u) {
  std::vector<double> w(u.size());
  const double dr = u.grid.dr;
  for (std::size_t j = 0; j < u.size(); ++j) w[j] = 4.0 * kPi * dr * u.grid.r(j);
  // Endpoint correction: r |u|^6 has slope |u(0)|^6 at the origin.
  const double u0 = u.size() ? std::abs(u[0]) : 0.0;
  return kernels::weighted_power_sum(u.values, w, 6.0) + 4.0 * kPi * dr * dr / 12.0 * std::pow(u0, 6.0);
}

MorawetzReport morawetz_report(const EvolutionResult& run) {
  if (run.snapshots.empty()) throw ConfigError("morawetz_report needs snapshots");
  MorawetzReport rep;
  rep.M.times = rep.density.times = run.times;
  for (const auto& u : run.snapshots) {
    const double M = morawetz_functional(u);
    rep.M.values.push_back(M);
    rep.density.values.push_back(morawetz_density(u));
    const double scale = l2_norm(u) * hdot1_norm(u);
    if (scale > 0.0) rep.holder_ratio = std::max(rep.holder_ratio, std::abs(M) / scale);
  }
  rep.action = time_norm(rep.density, 1.0, run.times.front(), run.times.back());
  rep.margin = rep.M.values.back() - rep.M.values.front() - 2.0 / 3.0 * rep.action;
  return rep;
}

namespace {

void rotate_in_time(SineSpectrum& s, double t) {
  for (std::size_t j = 1; j < s.values.size(); ++j) {
    const double k = 2.0 * kPi * s.grid.rho(j);
    s.values[j] *= std::polar(1.0, k * k * t);
  }
}

RadialField quintic(const RadialField& u) {
  RadialField out = u;
  for (auto& z : out.values) {
    const double a2 = std::norm(z);
    z *= a2 * a2;
  }
  return out;
}

} // namespace

ScatteringResult scattering_profile(const EvolutionResult& run, double mu, const RadialField& f_plus) {
  if (run.snapshots.empty()) throw ConfigError("scattering_profile needs snapshots");
  const auto& grid = run.snapshots.front().grid;
  const RadialField& start = f_plus.size() ? f_plus : run.snapshots.front();
  require_same_grid(start, run.snapshots.front());
  (void)restrict(TimeSeries{run.times, std::vector<double>(run.times.size(), 0.0)},
                 run.times.front(), run.times.back());

  // Duhamel integral of e^{-is Delta} |u|^4 u in the sine basis.
  SineSpectrum integral{grid, std::vector<cplx>(grid.n)};
  SineSpectrum previous{grid, {}};
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    auto d = sine_spectrum(quintic(run.snapshots[k]), 1.0);
    rotate_in_time(d, run.times[k]);
    if (k > 0) {
      const double h = 0.5 * (run.times[k] - run.times[k - 1]);
      for (std::size_t j = 0; j < grid.n; ++j)
        integral.values[j] += h * (d.values[j] + previous.values[j]);
    }
    previous = std::move(d);
  }
  auto plus = sine_spectrum(start, 1.0);
  const cplx factor(0.0, -mu);
  for (std::size_t j = 0; j < grid.n; ++j) plus.values[j] += factor * integral.values[j];

  ScatteringResult res;
  res.u_plus = field_from_sine_spectrum(plus);
  res.convergence.times = run.times;
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    auto back = sine_spectrum(run.snapshots[k], 1.0);
    rotate_in_time(back, run.times[k]);
    for (std::size_t j = 0; j < grid.n; ++j) back.values[j] -= plus.values[j];
    res.convergence.values.push_back(sobolev_norm(back, 1.0, false));
  }
  // Rough size of the Duhamel tail beyond the horizon, assuming the
  // nonlinearity decays like t^{-3}.
  const double T = run.times.back();
  const double tail = 0.5 * T * sobolev_norm(quintic(run.snapshots.back()), 1.0, false);
  const auto mid = interpolate(res.convergence, 0.5 * (run.times.front() + T));
  res.horizon_warning = std::abs(mu) * tail > 0.1 * std::max(mid, 1e-300) && mu != 0.0;
  return res;
}

FitResult fit_exponent(std::span<const double> x, std::span<const double> value) {
  if (x.size() != value.size() || x.size() < 3)
    throw DomainError("fit_exponent needs at least three (x, value) pairs");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(value[i] > 0.0) || !std::isfinite(value[i]))
      throw DomainError("fit_exponent needs positive finite values");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(value[i]));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_exponent needs distinct x values");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

namespace {

// Integral of a linear density over [0, x] within a segment of length h.
double segment_integral(double d0, double d1, double h, double x) {
  return d0 * x + 0.5 * (d1 - d0) / h * x * x;
}

// Offset x in [0, h] where the integral of the linear density reaches need.
double segment_crossing(double d0, double d1, double h, double need) {
  const double a = 0.5 * (d1 - d0) / h;
  const double disc = d0 * d0 + 4.0 * a * need;
  const double x = 2.0 * need / (d0 + std::sqrt(std::max(disc, 0.0)));
  return std::clamp(x, 0.0, h);
}

// Crossings this close to the last sample close the final interval.
double closing_edge(const std::vector<double>& times) {
  return times.back() - 1e-9 * std::max(1.0, times.back() - times.front());
}

void check_density(const TimeSeries& d, double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  if (d.times.size() != d.values.size() || d.times.empty())
    throw ConfigError("density series is empty or inconsistent");
  for (double v : d.values)
    if (!(v >= 0.0)) throw DomainError("density must be non-negative");
}

} // namespace

IntervalSplit split_by_threshold(const TimeSeries& density, double eta) {
  check_density(density, eta);
  IntervalSplit split;
  split.eta = eta;
  split.boundaries.push_back(density.times.front());
  const double end = closing_edge(density.times);
  double acc = 0.0;
  for (std::size_t k = 1; k < density.times.size(); ++k) {
    double t = density.times[k - 1];
    const double t1 = density.times[k];
    double d0 = density.values[k - 1];
    const double d1 = density.values[k];
    while (t < t1) {
      const double h = t1 - t;
      const double rest = segment_integral(d0, d1, h, h);
      if (acc + rest < eta) {
        acc += rest;
        break;
      }
      const double x = segment_crossing(d0, d1, h, eta - acc);
      const double tc = std::max(t + x, std::nextafter(t, t1));
      split.accumulated.push_back(eta);
      acc = 0.0;
      if (tc >= end) break;
      split.boundaries.push_back(tc);
      d0 = d0 + (d1 - d0) * (tc - t) / h;
      t = tc;
    }
  }
  if (split.boundaries.back() < density.times.back()) {
    split.boundaries.push_back(density.times.back());
    if (split.accumulated.size() < split.boundaries.size() - 1) split.accumulated.push_back(acc);
  }
  return split;
}

IntervalSplit split_by_s_norm(const EvolutionResult& run, double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  const auto g2 = spatial_norm_series(run, 6.0, true);
  const auto g12 = spatial_norm_series(run, 12.0, false);
  std::vector<double> d2(g2.values.size()), d8(g12.values.size());
  for (std::size_t k = 0; k < d2.size(); ++k) {
    d2[k] = g2.values[k] * g2.values[k];
    d8[k] = std::pow(g12.values[k], 8.0);
  }
  IntervalSplit split;
  split.eta = eta;
  split.boundaries.push_back(run.times.front());
  const double end = closing_edge(run.times);
  double A2 = 0.0, A8 = 0.0;
  auto value = [](double a2, double a8) { return std::sqrt(a2) + std::pow(a8, 0.125); };
  for (std::size_t k = 1; k < run.times.size(); ++k) {
    double t = run.times[k - 1];
    const double t1 = run.times[k];
    double a0 = d2[k - 1], b0 = d8[k - 1];
    while (t < t1) {
      const double h = t1 - t;
      const double full2 = segment_integral(a0, d2[k], h, h);
      const double full8 = segment_integral(b0, d8[k], h, h);
      if (value(A2 + full2, A8 + full8) < eta) {
        A2 += full2;
        A8 += full8;
        break;
      }
      double lo = 0.0, hi = h;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, t1); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = value(A2 + segment_integral(a0, d2[k], h, mid),
                               A8 + segment_integral(b0, d8[k], h, mid));
        (v < eta ? lo : hi) = mid;
      }
      const double tc = std::max(t + hi, std::nextafter(t, t1));
      split.accumulated.push_back(eta);
      A2 = A8 = 0.0;
      if (tc >= end) break;
      split.boundaries.push_back(tc);
      a0 = a0 + (d2[k] - a0) * (tc - t) / h;
      b0 = b0 + (d8[k] - b0) * (tc - t) / h;
      t = tc;
    }
  }
  if (split.boundaries.back() < run.times.back()) {
    split.boundaries.push_back(run.times.back());
    if (split.accumulated.size() < split.boundaries.size() - 1)
      split.accumulated.push_back(value(A2, A8));
  }
  return split;
}

EvolutionResult rescale_run(const EvolutionResult& run, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("rescale factor must be positive");
  EvolutionResult out;
  out.mu = run.mu;
  out.status = run.status;
  const double amp = std::sqrt(lambda);
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    const auto& u = run.snapshots[k];
    RadialGrid g{u.grid.r_max / lambda, u.grid.n, u.grid.dr / lambda};
    RadialField v(g, u.values);
    v *= amp;
    out.times.push_back(run.times[k] / (lambda * lambda));
    out.mass_series.push_back(mass(v));
    out.energy_series.push_back(energy(v, run.mu));
    out.snapshots.push_back(std::move(v));
  }
  return out;
}

} // namespace radnls
