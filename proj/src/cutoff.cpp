#include "radnls/cutoff.hpp"

#include "radnls/errors.hpp"

#include <cmath>

namespace radnls {

namespace {

double mollifier_g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

void require_positive(double a) {
  if (!(a > 0.0)) throw DomainError("cutoff threshold must be positive");
}

} // namespace

double smooth_step_down(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double lo = mollifier_g(1.0 - t);
  const double hi = mollifier_g(t);
  return lo / (lo + hi);
}

double cutoff_leq(double a, double x) {
  require_positive(a);
  const double ax = std::abs(x);
  if (ax <= a) return 1.0;
  const double b = 1.1 * a;
  if (ax >= b) return 0.0;
  return smooth_step_down((ax - a) / (b - a));
}

double cutoff_geq(double a, double x) { return 1.0 - cutoff_leq(a, x); }

double cutoff_band(double a, double x) { return cutoff_leq(2.0 * a, x) - cutoff_leq(a, x); }

double cutoff_between(double a, double b, double x) { return cutoff_leq(b, x) - cutoff_leq(a, x); }

} // namespace radnls
