#include "radnls/grid.hpp"

#include "radnls/errors.hpp"

#include <cmath>
#include <string>

namespace radnls {

RadialGrid make_grid(double r_max, std::size_t n) {
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw ConfigError("grid.r_max: must be positive, got " + std::to_string(r_max));
  if (n < 16) throw ConfigError("grid.n: must be at least 16, got " + std::to_string(n));
  return RadialGrid{r_max, n, r_max / static_cast<double>(n)};
}

RadialField::RadialField(const RadialGrid& g, std::vector<cplx> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != grid.n) throw ConfigError("field length does not match grid size");
}

bool RadialField::all_finite() const {
  for (const auto& z : values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool SpectralField::all_finite() const {
  for (const auto& z : values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void require_same_grid(const RadialField& a, const RadialField& b) {
  if (!(a.grid == b.grid) || a.size() != b.size())
    throw ConfigError("fields live on different grids");
}

RadialField& RadialField::operator+=(const RadialField& o) {
  require_same_grid(*this, o);
  for (std::size_t j = 0; j < values.size(); ++j) values[j] += o.values[j];
  return *this;
}

RadialField& RadialField::operator-=(const RadialField& o) {
  require_same_grid(*this, o);
  for (std::size_t j = 0; j < values.size(); ++j) values[j] -= o.values[j];
  return *this;
}

RadialField& RadialField::operator*=(cplx a) {
  for (auto& z : values) z *= a;
  return *this;
}

RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }
RadialField operator*(cplx a, RadialField f) { return f *= a; }

double l2_norm(const RadialField& f) {
  double acc = 0.0;
  for (std::size_t j = 1; j < f.size(); ++j) {
    const double r = f.grid.r(j);
    acc += r * r * std::norm(f[j]);
  }
  return std::sqrt(4.0 * kPi * f.grid.dr * acc);
}

double relative_l2_error(const RadialField& a, const RadialField& b, const RadialField& ref) {
  const double den = l2_norm(ref);
  const double num = l2_norm(a - b);
  if (den == 0.0) return num;
  return num / den;
}

} // namespace radnls
