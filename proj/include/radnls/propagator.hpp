#pragma once

// Free Schroedinger flow and a Strang split-step integrator for
//   i u_t + Delta u = mu |u|^4 u
// on radial data. The state evolved is H = r u on the odd extension, so the
// Laplacian is diagonal in the sine basis: Delta -> -4 pi^2 rho^2.

#include "radnls/grid.hpp"

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace radnls {

struct SolverConfig {
  double dt = 5e-3;
  double t_end = 1.0;
  double mu = 1.0;                     ///< +1 defocusing, -1 focusing, 0 linear
  std::size_t snapshot_stride = 1;     ///< steps between stored snapshots
  double dealias_fraction = 2.0 / 3.0; ///< spectrum kept after each linear step
  double boundary_margin = 0.1;        ///< outer fraction of r_max treated as untrusted
  double margin_tol = 1e-8;            ///< allowed relative mass in the untrusted shell
  double blowup_guard = 100.0;         ///< abort when max|u| exceeds guard * max|u0|
  double max_dt = 1e-2;                ///< accuracy bound of the default profile

  /// Throws ConfigError on invalid settings.
  void validate() const;
  bool operator==(const SolverConfig&) const = default;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<RadialField> snapshots;
  std::vector<double> mass_series;
  std::vector<double> energy_series;
  std::map<std::string, std::vector<double>> norm_densities;
  double mu = 0.0;
  std::string status = "ok";  ///< "ok" or "guard-trip"
  double mass_drift = 0.0;    ///< max_k |M(t_k) - M(0)| / M(0)
  double energy_drift = 0.0;  ///< max_k |E(t_k) - E(0)| / |E(0)|
};

/// e^{it Delta} f: multiplies the sine spectrum by exp(-4 pi^2 i rho^2 t).
RadialField linear_flow(const RadialField& f, double t);

/// Strang splitting: half nonlinear phase, exact linear step, half phase.
/// Snapshots every snapshot_stride steps and at t_end. A guard trip returns
/// the partial result with status "guard-trip". Mass escaping into the
/// boundary shell throws ResolutionError.
EvolutionResult evolve_nls(const RadialField& u0, const SolverConfig& cfg);

/// e^{it Delta} v0 at the given increasing times (mu = 0 bookkeeping).
EvolutionResult evolve_linear_series(const RadialField& v0, std::span<const double> times);

/// Same flow without storing snapshots: visit(k, t_k, v(t_k)) per time.
/// The boundary-shell check runs when margin > 0.
void stream_linear_series(const RadialField& v0, std::span<const double> times,
                          const std::function<void(std::size_t, double, const RadialField&)>& visit,
                          double margin = 0.0, double margin_tol = 1e-8);

/// w = u - v snapshotwise. energy_series holds the increment functional
///   E~(t) = 1/2 ||grad w||^2 + mu/6 ||u||_6^6,
/// norm_densities["hdot1_w"] holds ||w(t)||_{Hdot^1}.
EvolutionResult perturbation_series(const EvolutionResult& u, const EvolutionResult& v);

/// Relative L^2 mass of f beyond r_max (1 - margin).
double boundary_mass_fraction(const RadialField& f, double margin);

/// Snapshot times for a run with the given configuration.
std::vector<double> snapshot_times(const SolverConfig& cfg);

} // namespace radnls
