#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace radnls {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Uniform radial grid r_j = j * dr, j = 0..n-1, on [0, r_max).
///
/// The grid carries its conjugate frequency grid: drho = 1 / (2 r_max) and
/// rho_j = j * drho, so that rho_max = n * drho = 1 / (2 dr). With this
/// pairing the radial Fourier transform is a discrete sine transform.
struct RadialGrid {
  double r_max = 0.0;
  std::size_t n = 0;
  double dr = 0.0;

  double r(std::size_t j) const { return static_cast<double>(j) * dr; }
  double drho() const { return 1.0 / (2.0 * r_max); }
  double rho(std::size_t j) const { return static_cast<double>(j) * drho(); }
  double rho_max() const { return 1.0 / (2.0 * dr); }

  bool operator==(const RadialGrid&) const = default;
};

/// Builds a grid; throws ConfigError for r_max <= 0 or n < 16.
RadialGrid make_grid(double r_max, std::size_t n);

/// Complex radial profile u(r_j). Represents u(x) = u(|x|) on R^3.
struct RadialField {
  RadialGrid grid;
  std::vector<cplx> values;

  RadialField() = default;
  explicit RadialField(const RadialGrid& g) : grid(g), values(g.n) {}
  RadialField(const RadialGrid& g, std::vector<cplx> v);

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t j) { return values[j]; }
  const cplx& operator[](std::size_t j) const { return values[j]; }
  std::span<const cplx> span() const { return values; }

  bool all_finite() const;

  RadialField& operator+=(const RadialField& o);
  RadialField& operator-=(const RadialField& o);
  RadialField& operator*=(cplx a);
};

RadialField operator+(RadialField a, const RadialField& b);
RadialField operator-(RadialField a, const RadialField& b);
RadialField operator*(cplx a, RadialField f);

/// Pointwise product with a real radial profile g(r).
template <class Fn>
RadialField multiply_radial(RadialField f, Fn&& g) {
  for (std::size_t j = 0; j < f.size(); ++j) f[j] *= g(f.grid.r(j));
  return f;
}

/// Samples F(rho_j) on the conjugate frequency grid of some RadialGrid.
struct SpectralField {
  double rho_max = 0.0;
  std::size_t n = 0;
  std::vector<cplx> values;

  double drho() const { return rho_max / static_cast<double>(n); }
  double rho(std::size_t j) const { return static_cast<double>(j) * drho(); }
  bool all_finite() const;
};

/// Relative L^2(4 pi r^2 dr) distance ||a - b|| / ||ref||.
double relative_l2_error(const RadialField& a, const RadialField& b, const RadialField& ref);

/// Plain L^2(4 pi r^2 dr) norm, trapezoid on the grid.
double l2_norm(const RadialField& f);

void require_same_grid(const RadialField& a, const RadialField& b);

} // namespace radnls
