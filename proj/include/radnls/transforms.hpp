#pragma once

#include "radnls/grid.hpp"

#include <functional>
#include <span>
#include <vector>

namespace radnls {

/// Parameters of the deformed transform and of the initial-data splitting.
struct DecompositionParams {
  double alpha = 1.0;     ///< frequency weight exponent, alpha < 3
  double beta = 0.0;      ///< spatial weight exponent, beta > -3
  double epsilon0 = 1.0;  ///< inner/outer radius of the modified components
  double N = 1.0;         ///< dyadic frequency threshold
  double s0 = 0.9;        ///< target regularity, 5/6 < s0 < 1
  double delta0 = 0.1;    ///< smallness budget for the high-frequency tail
  double delta = 0.25;    ///< inside/outside region radius factor
  /// Largest tolerated spectral mass above rho_max/2, relative to the mass
  /// of the data, before a component computation is declared under-resolved.
  double resolution_tol = 1e-4;

  /// Throws DomainError when any hypothesis is violated.
  void validate() const;
  bool operator==(const DecompositionParams&) const = default;
};

/// Sine spectrum S_j = dr * sum_m sin(pi j m / n) r_m^{power} f(r_m), the
/// discretization of S(rho) = int_0^inf sin(2 pi r rho) r^{power} f(r) dr.
/// S_0 = 0 by construction.
struct SineSpectrum {
  RadialGrid grid;
  std::vector<cplx> values;
};

SineSpectrum sine_spectrum(const RadialField& f, double power = 1.0);

/// Inverts sine_spectrum for power = 1: H = 4 drho sum_j sin(...) S_j and
/// f = H / r. The r = 0 node is the r -> 0 limit of the sum.
RadialField field_from_sine_spectrum(const SineSpectrum& s);

/// Fills f(0) from the first two interior nodes, u(0) = (4 u(dr) - u(2 dr)) / 3.
void extrapolate_origin(std::vector<cplx>& values);

/// Value at r = 0 of the field whose sine spectrum is S: the r -> 0 limit of
/// the inverse sum, 8 pi drho sum_j rho_j S_j.
cplx origin_from_sine_spectrum(std::span<const cplx> S, const RadialGrid& grid);

/// Radial 3D Fourier transform with the 2 pi convention:
/// F(rho) = (2 / rho) int_0^inf sin(2 pi r rho) r f(r) dr,
/// F(0) = 4 pi int r^2 f dr.
SpectralField radial_fourier(const RadialField& f);

/// Inverse of radial_fourier on the grid conjugate to F.
RadialField inverse_radial_fourier(const SpectralField& F);
/// Same, but checks that F is conjugate to the given grid.
RadialField inverse_radial_fourier(const SpectralField& F, const RadialGrid& grid);

/// Deformed transform |rho|^alpha * FT(|x|^beta f)(rho), reduced radially to
/// 2 rho^{alpha-1} int sin(2 pi r rho) r^{beta+1} f(r) dr.
/// The rho = 0 sample holds the finite limit (0 for alpha > 0).
SpectralField deformed_fourier(const RadialField& f, const DecompositionParams& p);

/// Littlewood-Paley projectors.
enum class LPKind { leq, geq, band, between };
struct LPMode {
  LPKind kind;
  double a;        ///< N for leq/geq, 2^k for band, lower edge for between
  double b = 0.0;  ///< upper edge for between
  static LPMode leq(double n) { return {LPKind::leq, n}; }
  static LPMode geq(double n) { return {LPKind::geq, n}; }
  static LPMode band(double n) { return {LPKind::band, n}; }
  static LPMode between(double lo, double hi) { return {LPKind::between, lo, hi}; }
  double multiplier(double rho) const;
};

RadialField lp_project(const RadialField& f, const LPMode& mode);

/// Applies a radial Fourier multiplier m(rho) to f.
RadialField apply_multiplier(const RadialField& f, const std::function<cplx(double)>& m);

/// H^s (inhomogeneous, weight <2 pi rho>^s) or homogeneous (weight (2 pi rho)^s)
/// Sobolev norm. Supports |s| <= 2; throws DomainError otherwise.
double sobolev_norm(const RadialField& f, double s, bool homogeneous);

/// Same norm evaluated from a precomputed sine spectrum (power = 1).
double sobolev_norm(const SineSpectrum& s, double order, bool homogeneous);

/// Relative spectral L^2 mass above rho_max / 2.
double spectral_tail_fraction(const SineSpectrum& s);

/// Radial derivative d/dr f, evaluated spectrally; 0 at the origin.
RadialField radial_derivative(const RadialField& f);

/// |nabla|^s f via the multiplier (2 pi rho)^s.
RadialField fractional_derivative(const RadialField& f, double s);

} // namespace radnls
