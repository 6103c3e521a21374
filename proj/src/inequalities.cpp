#include "radnls/inequalities.hpp"

#include "radnls/errors.hpp"
#include "radnls/norms.hpp"
#include "radnls/report.hpp"
#include "radnls/transforms.hpp"

#include <cmath>

namespace radnls {

namespace {

double inv(double x) { return x == kInf ? 0.0 : 1.0 / x; }

} // namespace

void InequalityTuple::validate() const {
  constexpr double d = 3.0;
  if (kind == Kind::hardy) {
    if (!(p > 1.0 && p < d)) throw DomainError("Hardy inequality needs 1 < p < 3");
    return;
  }
  if (!(p >= 1.0 && q >= 1.0)) throw DomainError("radial Sobolev needs p, q >= 1");
  if (!(s > 0.0 && s < d)) throw DomainError("radial Sobolev needs 0 < s < 3");
  if (!(alpha > -d * inv(q))) throw DomainError("radial Sobolev needs alpha > -3/q");
  if (!(inv(q) <= inv(p) && inv(p) <= inv(q) + s))
    throw DomainError("radial Sobolev needs 1/q <= 1/p <= 1/q + s");
  if (std::abs(alpha + s - d * (inv(p) - inv(q))) > 1e-12)
    throw DomainError("radial Sobolev needs alpha + s = 3 (1/p - 1/q)");
  int equalities = (p == 1.0) + (p == kInf) + (q == 1.0) + (q == kInf) +
                   (std::abs(inv(p) - inv(q) - s) < 1e-12);
  if (equalities > 1) throw DomainError("radial Sobolev allows at most one endpoint equality");
}

std::string InequalityTuple::label() const {
  if (kind == Kind::hardy) return "hardy(p=" + format_number(p) + ")";
  return "radial_sobolev(alpha=" + format_number(alpha) + ",q=" + format_number(q) +
         ",s=" + format_number(s) + ",p=" + format_number(p) + ")";
}

InequalityTuple hardy(double p) {
  InequalityTuple t{InequalityTuple::Kind::hardy, -1.0, p, 1.0, p};
  t.validate();
  return t;
}

InequalityTuple radial_sobolev(double alpha, double q, double s, double p) {
  InequalityTuple t{InequalityTuple::Kind::radial_sobolev, alpha, q, s, p};
  t.validate();
  return t;
}

std::vector<InequalityTuple> default_inequalities() {
  return {hardy(2.0), radial_sobolev(0.5, kInf, 1.0, 2.0), radial_sobolev(0.0, 6.0, 1.0, 2.0)};
}

double inequality_lhs(const RadialField& u, const InequalityTuple& t) {
  std::vector<double> w(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double r = u.grid.r(j);
    w[j] = r == 0.0 ? (t.alpha == 0.0 ? 1.0 : 0.0) : std::pow(r, t.alpha);
  }
  return weighted_lebesgue_norm(u, w, t.q);
}

double inequality_rhs(const RadialField& u, const InequalityTuple& t) {
  if (t.p == 2.0) return sobolev_norm(u, t.s, true);
  const RadialField g = t.s == 1.0 ? radial_derivative(u) : fractional_derivative(u, t.s);
  const std::vector<double> ones(u.size(), 1.0);
  return weighted_lebesgue_norm(g, ones, t.p);
}

InequalityTable inequality_report(const std::vector<std::pair<std::string, RadialField>>& corpus,
                                  const std::vector<InequalityTuple>& tuples, double budget) {
  InequalityTable table;
  table.budget = budget;
  for (const auto& t : tuples) t.validate();
  for (const auto& [name, u] : corpus)
    for (const auto& t : tuples) {
      InequalityRow row{name, t.label(), inequality_lhs(u, t), inequality_rhs(u, t), 0.0, false};
      row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
      row.flagged = !(row.ratio <= budget);
      table.max_ratio = std::max(table.max_ratio, row.ratio);
      table.any_flagged = table.any_flagged || row.flagged;
      table.rows.push_back(row);
    }
  return table;
}

} // namespace radnls
