#pragma once

// Numerical harness for the weighted inequalities
//   radial Sobolev   || |x|^alpha u ||_{L^q} <~ || |grad|^s u ||_{L^p}
//   Hardy            || u / |x| ||_{L^p}     <~ || grad u ||_{L^p},  1 < p < 3.

#include "radnls/grid.hpp"

#include <string>
#include <utility>
#include <vector>

namespace radnls {

struct InequalityTuple {
  enum class Kind { hardy, radial_sobolev };
  Kind kind = Kind::hardy;
  double alpha = -1.0;
  double q = 2.0;
  double s = 1.0;
  double p = 2.0;

  /// Throws DomainError outside the validity region of the inequality.
  void validate() const;
  std::string label() const;
};

InequalityTuple hardy(double p);
InequalityTuple radial_sobolev(double alpha, double q, double s, double p);

/// Hardy at p = 2, radial Sobolev (1/2, inf, 1, 2) and (0, 6, 1, 2).
std::vector<InequalityTuple> default_inequalities();

struct InequalityRow {
  std::string field;
  std::string inequality;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  ///< lhs / rhs, 0 for the zero field
  bool flagged = false;
};

struct InequalityTable {
  std::vector<InequalityRow> rows;
  double budget = 20.0;
  double max_ratio = 0.0;
  bool any_flagged = false;
};

/// LHS side of one inequality for one field.
double inequality_lhs(const RadialField& u, const InequalityTuple& t);
/// RHS side of one inequality for one field.
double inequality_rhs(const RadialField& u, const InequalityTuple& t);

InequalityTable inequality_report(const std::vector<std::pair<std::string, RadialField>>& corpus,
                                  const std::vector<InequalityTuple>& tuples = default_inequalities(),
                                  double budget = 20.0);

} // namespace radnls
