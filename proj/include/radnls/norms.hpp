#pragma once

// Spacetime functionals evaluated on stored runs: mixed Lebesgue norms,
// the S, S^0, Y and X_N working norms, region-masked norms, conservation
// laws, the Morawetz ledger, the scattering profile, exponent fits and
// threshold interval splitting.

#include "radnls/grid.hpp"
#include "radnls/propagator.hpp"

#include <array>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace radnls {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// ||f||_{L^p(4 pi r^2 dr)} (trapezoid) or ||d_r f||_{L^p} when gradient is set.
/// p = kInf gives the grid maximum including r = 0. Supported p:
/// 1, 6/5, 2, 12/5, 3, 6, 8, 10, 12, kInf. Others throw DomainError.
double lebesgue_norm(const RadialField& f, double p, bool gradient = false);

/// Same norm with a real radial weight w(r_j) multiplying |f|.
double weighted_lebesgue_norm(const RadialField& f, std::span<const double> weight, double p);

/// M = int |f|^2.
double mass(const RadialField& f);
/// E = 1/2 int |grad f|^2 + mu/6 int |f|^6.
double energy(const RadialField& f, double mu);
/// ||f||_{Hdot^1}.
double hdot1_norm(const RadialField& f);

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
};

struct MixedNormSpec {
  double q = 2.0;
  double p = 6.0;
  double t_a = 0.0;
  double t_b = 1.0;
  bool gradient = false;
};

/// Maximum gap between snapshot times that time integrals accept.
inline constexpr double kMaxSnapshotGap = 0.125;

/// (int_a^b g(t)^q dt)^{1/q} by trapezoid over the samples inside [a, b]
/// (endpoint values linearly interpolated); q = kInf takes the maximum.
/// Throws ResolutionError when a gap exceeds kMaxSnapshotGap, ConfigError
/// when [a, b] is not covered.
double time_norm(const TimeSeries& g, double q, double t_a, double t_b);

/// Per-snapshot spatial norms ||u(t_k)||_{L^p} (or of the gradient).
TimeSeries spatial_norm_series(const EvolutionResult& run, double p, bool gradient);

double mixed_norm(const EvolutionResult& run, const MixedNormSpec& spec);

/// ||grad u||_{L^2 L^6} + ||u||_{L^8 L^12}.
double s_norm(const EvolutionResult& run, double t_a, double t_b);

/// max over (q, r) in {(inf,2), (8,12/5), (4,3), (2,6)} of ||u||_{L^q L^r}.
double s0_strichartz_norm(const EvolutionResult& run, double t_a, double t_b);

/// Y(I) norm. raw = {||grad v||_{L2L6}, ||v||_{L8L12}, ||v||_{Linf L6},
/// ||v||_{L2 Linf}}; weights N^{s0-5/6}, N^{s0-7/24}, N^{s0-1/3}, N^{s0}.
struct YNorm {
  std::array<double, 4> raw{};
  std::array<double, 4> exponent{};
  std::array<double, 4> terms{};
  double total = 0.0;
};
YNorm y_norm(const EvolutionResult& run, double N, double s0, double t_a, double t_b);
YNorm y_norm_from_raw(const std::array<double, 4>& raw, double N, double s0);

/// X_N(I) norm. raw = {||h||_{Linf Hdot1}, ||h||_{L8 L8}}; weights
/// N^{3(s0-1)}, N^{(9/8)(s0-1)}.
struct XNorm {
  std::array<double, 2> raw{};
  std::array<double, 2> exponent{};
  std::array<double, 2> terms{};
  double total = 0.0;
};
XNorm x_norm(const EvolutionResult& run, double N, double s0, double t_a, double t_b);
XNorm x_norm_from_raw(const std::array<double, 2>& raw, double N, double s0);

enum class Side { inside, outside };

/// Radius delta (1 + 2^k t) of the moving region boundary.
double region_radius(double delta, int k, double t);

/// Mixed norm of chi_{<=R(t)} u (inside) or chi_{>=R(t)} u (outside),
/// R(t) = delta (1 + 2^k t), mask recomputed per snapshot.
double region_masked_norm(const EvolutionResult& run, double delta, int k, Side side,
                          const MixedNormSpec& spec);
/// Spatial norm of the masked field at one time.
double region_masked_spatial_norm(const RadialField& u, double t, double delta, int k, Side side,
                                  double p, bool gradient = false);

/// M(t) = Im int d_r u conj(u) 4 pi r^2 dr.
double morawetz_functional(const RadialField& u);
/// int |u|^6 / |x| dx.
double morawetz_density(const RadialField& u);

struct MorawetzReport {
  TimeSeries M;
  TimeSeries density;
  double action = 0.0;  ///< int int |u|^6 / |x| dx dt
  /// M(T) - M(0) - (2/3) action
  double margin = 0.0;
  /// max_k |M(t_k)| / (||u||_{L2} ||u||_{Hdot1})
  double holder_ratio = 0.0;
};
MorawetzReport morawetz_report(const EvolutionResult& run);

struct ScatteringResult {
  RadialField u_plus;
  TimeSeries convergence;  ///< ||u(t) - e^{it Delta} u_plus||_{H^1}
  bool horizon_warning = false;
};

/// u_plus = u(0) - i mu int_0^T e^{-is Delta} (|u|^4 u)(s) ds by trapezoid
/// over snapshots. f_plus replaces u(0) when it has values.
ScatteringResult scattering_profile(const EvolutionResult& run, double mu,
                                    const RadialField& f_plus = {});

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< root-mean-square residual in log space
};

/// Ordinary least squares of log(value) on log(x). Needs >= 3 positive points.
FitResult fit_exponent(std::span<const double> x, std::span<const double> value);

struct IntervalSplit {
  std::vector<double> boundaries;
  double eta = 0.0;
  std::vector<double> accumulated;  ///< norm value reached on each interval
};

/// Greedy splitting with linear accumulation of int density dt; an interval
/// closes exactly where the accumulation reaches eta.
IntervalSplit split_by_threshold(const TimeSeries& density, double eta);

/// S-norm splitting with the power rule: on each interval accumulate
///   A2 = int ||grad u||_6^2 dt and A8 = int ||u||_12^8 dt
/// and close where A2^{1/2} + A8^{1/8} reaches eta.
IntervalSplit split_by_s_norm(const EvolutionResult& run, double eta);

/// u_lambda(t, r) = lambda^{1/2} u(lambda^2 t, lambda r) stored on the grid
/// with r_max / lambda and times t / lambda^2. Exact for any lambda > 0.
EvolutionResult rescale_run(const EvolutionResult& run, double lambda);

} // namespace radnls
