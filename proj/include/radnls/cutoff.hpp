#pragma once

namespace radnls {

/// Smooth monotone ramp on [0,1]: 1 at t <= 0, 0 at t >= 1,
/// psi(t) = g(1-t) / (g(t) + g(1-t)) with g(t) = exp(-1/t).
double smooth_step_down(double t);

/// chi_{<=a}(x): exactly 1 for |x| <= a, exactly 0 for |x| >= 11a/10.
/// Throws DomainError for a <= 0.
double cutoff_leq(double a, double x);

/// chi_{>=a} = 1 - chi_{<=a}.
double cutoff_geq(double a, double x);

/// chi_a = chi_{<=2a} - chi_{<=a}.
double cutoff_band(double a, double x);

/// chi_{a<=.<=b} = chi_{<=b} - chi_{<=a}.
double cutoff_between(double a, double b, double x);

/// Value type for a fixed threshold; handy when a cutoff is passed around.
struct CutoffProfile {
  double a;
  double leq(double x) const { return cutoff_leq(a, x); }
  double geq(double x) const { return cutoff_geq(a, x); }
  double band(double x) const { return cutoff_band(a, x); }
};

} // namespace radnls
