#include "radnls/propagator.hpp"

#include "radnls/errors.hpp"
#include "radnls/kernels.hpp"
#include "radnls/norms.hpp"
#include "radnls/spectral.hpp"
#include "radnls/transforms.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

namespace radnls {

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("solver.dt: must be positive");
  if (!(dt <= max_dt)) throw ConfigError("solver.dt: exceeds the accuracy bound max_dt");
  if (!(t_end >= 0.0)) throw ConfigError("solver.t_end: must be non-negative");
  if (snapshot_stride < 1) throw ConfigError("solver.snapshot_stride: must be at least 1");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
    throw ConfigError("solver.dealias_fraction: must lie in (0, 1]");
  if (!(boundary_margin >= 0.0 && boundary_margin < 1.0))
    throw ConfigError("solver.boundary_margin: must lie in [0, 1)");
  if (mu != 1.0 && mu != -1.0 && mu != 0.0) throw ConfigError("solver.mu: must be +1, -1 or 0");
  if (!(blowup_guard > 1.0)) throw ConfigError("solver.blowup_guard: must exceed 1");
  if (!(margin_tol > 0.0)) throw ConfigError("solver.margin_tol: must be positive");
}

namespace {

// One exact linear step in the sine basis with spectral truncation.
class LinearStep {
public:
  LinearStep(const RadialGrid& g, double tau, double keep_fraction)
      : g_(g), phase_(g.n), h_(g.n), s_(g.n) {
    keep_ = static_cast<std::size_t>(std::ceil(keep_fraction * static_cast<double>(g.n)));
    for (std::size_t j = 1; j < g.n; ++j) {
      const double k = 2.0 * kPi * g.rho(j);
      phase_[j] = j < keep_ ? g.dr * std::polar(1.0, -k * k * tau) : cplx(0.0);
    }
  }

  void apply(RadialField& u) {
    const auto n = static_cast<std::int64_t>(g_.n);
    const double dr = g_.dr;
#pragma omp parallel for schedule(static)
    for (std::int64_t m = 1; m < n; ++m) h_[m] = (static_cast<double>(m) * dr) * u[m];
    spectral::sine_sum(std::span<const cplx>(h_), std::span<cplx>(s_));
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < n; ++j) s_[j] *= phase_[j];
    spectral::sine_sum(std::span<const cplx>(s_), std::span<cplx>(h_));
    const double scale = 4.0 * g_.drho();
#pragma omp parallel for schedule(static)
    for (std::int64_t m = 1; m < n; ++m) u[m] = scale * h_[m] / (static_cast<double>(m) * dr);
    u[0] = origin_from_sine_spectrum(s_, g_);
  }

private:
  RadialGrid g_;
  std::vector<cplx> phase_;
  std::vector<cplx> h_, s_;
  std::size_t keep_ = 0;
};

RadialField flow_from_spectrum(const SineSpectrum& s, double t) {
  SineSpectrum moved = s;
  for (std::size_t j = 1; j < s.values.size(); ++j) {
    const double k = 2.0 * kPi * s.grid.rho(j);
    moved.values[j] *= std::polar(1.0, -k * k * t);
  }
  return field_from_sine_spectrum(moved);
}

void check_times(std::span<const double> times) {
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw ConfigError("times must be strictly increasing");
}

void check_margin(const RadialField& u, double t, double margin, double tol) {
  const double frac = boundary_mass_fraction(u, margin);
  if (frac > tol) {
    std::ostringstream msg;
    msg << "mass fraction " << frac << " beyond r = " << u.grid.r_max * (1.0 - margin)
        << " at t = " << t << " exceeds " << tol << "; enlarge r_max";
    throw ResolutionError(msg.str());
  }
}

std::size_t step_count(const SolverConfig& cfg) {
  return static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
}

void finish_drifts(EvolutionResult& r) {
  if (r.mass_series.empty()) return;
  const double m0 = r.mass_series.front(), e0 = r.energy_series.front();
  for (std::size_t k = 0; k < r.mass_series.size(); ++k) {
    if (m0 > 0.0) r.mass_drift = std::max(r.mass_drift, std::abs(r.mass_series[k] - m0) / m0);
    if (e0 != 0.0)
      r.energy_drift = std::max(r.energy_drift, std::abs(r.energy_series[k] - e0) / std::abs(e0));
  }
}

} // namespace

double boundary_mass_fraction(const RadialField& f, double margin) {
  const double edge = f.grid.r_max * (1.0 - margin);
  double total = 0.0, outer = 0.0;
  for (std::size_t j = 1; j < f.size(); ++j) {
    const double r = f.grid.r(j);
    const double e = r * r * std::norm(f[j]);
    total += e;
    if (r >= edge) outer += e;
  }
  return total > 0.0 ? outer / total : 0.0;
}

RadialField linear_flow(const RadialField& f, double t) {
  return flow_from_spectrum(sine_spectrum(f, 1.0), t);
}

std::vector<double> snapshot_times(const SolverConfig& cfg) {
  const std::size_t steps = step_count(cfg);
  const double tau = steps ? cfg.t_end / static_cast<double>(steps) : 0.0;
  std::vector<double> t{0.0};
  for (std::size_t s = 1; s <= steps; ++s)
    if (s % cfg.snapshot_stride == 0 || s == steps) t.push_back(static_cast<double>(s) * tau);
  return t;
}

EvolutionResult evolve_nls(const RadialField& u0, const SolverConfig& cfg) {
  cfg.validate();
  if (!u0.all_finite()) throw DomainError("initial data has non-finite samples");
  EvolutionResult run;
  run.mu = cfg.mu;
  const std::size_t steps = step_count(cfg);
  const double tau = steps ? cfg.t_end / static_cast<double>(steps) : 0.0;
  const double peak0 = kernels::max_abs(u0.span());

  auto push = [&](double t, const RadialField& u) {
    run.times.push_back(t);
    run.snapshots.push_back(u);
    run.mass_series.push_back(mass(u));
    run.energy_series.push_back(energy(u, cfg.mu));
    run.norm_densities["linf"].push_back(kernels::max_abs(u.span()));
    run.norm_densities["l6_pow6"].push_back(std::pow(lebesgue_norm(u, 6.0), 6.0));
  };
  auto record = [&](double t, const RadialField& u) {
    if (cfg.boundary_margin > 0.0) check_margin(u, t, cfg.boundary_margin, cfg.margin_tol);
    push(t, u);
  };

  RadialField u = u0;
  record(0.0, u);
  LinearStep linear(u.grid, tau, cfg.dealias_fraction);
  for (std::size_t s = 1; s <= steps; ++s) {
    kernels::nonlinear_phase(u.values, cfg.mu, 0.5 * tau);
    linear.apply(u);
    kernels::nonlinear_phase(u.values, cfg.mu, 0.5 * tau);
    const double t = static_cast<double>(s) * tau;
    if (kernels::max_abs(u.span()) > cfg.blowup_guard * peak0) {
      run.status = "guard-trip";
      push(t, u);
      break;
    }
    if (s % cfg.snapshot_stride == 0 || s == steps) record(t, u);
  }
  finish_drifts(run);
  return run;
}

void stream_linear_series(const RadialField& v0, std::span<const double> times,
                          const std::function<void(std::size_t, double, const RadialField&)>& visit,
                          double margin, double margin_tol) {
  check_times(times);
  const auto s = sine_spectrum(v0, 1.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto v = flow_from_spectrum(s, times[k]);
    if (margin > 0.0) check_margin(v, times[k], margin, margin_tol);
    visit(k, times[k], v);
  }
}

EvolutionResult evolve_linear_series(const RadialField& v0, std::span<const double> times) {
  EvolutionResult run;
  run.mu = 0.0;
  stream_linear_series(v0, times, [&](std::size_t, double t, const RadialField& v) {
    run.times.push_back(t);
    run.mass_series.push_back(mass(v));
    run.energy_series.push_back(energy(v, 0.0));
    run.snapshots.push_back(v);
  });
  finish_drifts(run);
  return run;
}

EvolutionResult perturbation_series(const EvolutionResult& u, const EvolutionResult& v) {
  if (u.times.size() != v.times.size() || u.snapshots.size() != v.snapshots.size())
    throw ConfigError("perturbation_series: runs have different time grids");
  for (std::size_t k = 0; k < u.times.size(); ++k)
    if (std::abs(u.times[k] - v.times[k]) > 1e-12 * std::max(1.0, std::abs(u.times[k])))
      throw ConfigError("perturbation_series: snapshot times differ");
  EvolutionResult w;
  w.mu = u.mu;
  w.status = u.status;
  w.times = u.times;
  auto& hdot = w.norm_densities["hdot1_w"];
  for (std::size_t k = 0; k < u.snapshots.size(); ++k) {
    require_same_grid(u.snapshots[k], v.snapshots[k]);
    auto wk = u.snapshots[k] - v.snapshots[k];
    const double h1 = hdot1_norm(wk);
    hdot.push_back(h1);
    w.mass_series.push_back(mass(wk));
    w.energy_series.push_back(0.5 * h1 * h1 +
                              u.mu / 6.0 * std::pow(lebesgue_norm(u.snapshots[k], 6.0), 6.0));
    w.snapshots.push_back(std::move(wk));
  }
  return w;
}

} // namespace radnls
