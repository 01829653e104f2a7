#include "pbr/witness/lemma.hpp"

#include <algorithm>
#include <cmath>

#include "pbr/errors.hpp"

namespace pbr::witness {

double r_eval(double alpha, double gamma, double z) {
  const double t = alpha * z + 1;
  return t * t - gamma * (alpha + z);
}

RExtrema r_extrema(double alpha, double gamma) {
  RExtrema e;
  e.at_minus_one = r_eval(alpha, gamma, -1);
  e.at_one = r_eval(alpha, gamma, 1);
  e.max_abs = std::max(std::abs(e.at_minus_one), std::abs(e.at_one));
  // r = alpha^2 z^2 + (2 alpha - gamma) z + 1 - gamma alpha
  if (alpha != 0) {
    e.critical_z = -(2 * alpha - gamma) / (2 * alpha * alpha);
    e.critical_value = r_eval(alpha, gamma, e.critical_z);
    e.critical_inside = e.critical_z > -1 && e.critical_z < 1;
    if (e.critical_inside) e.max_abs = std::max(e.max_abs, std::abs(e.critical_value));
  }
  return e;
}

double r_sweep_max(double gamma, double alpha0, double kappa, double resolution) {
  const long steps = std::max(1L, static_cast<long>(std::ceil(2 * kappa / resolution)));
  double m = 0;
  for (long k = 0; k <= steps; ++k) {
    const double alpha = alpha0 - kappa + 2 * kappa * static_cast<double>(k) / static_cast<double>(steps);
    m = std::max(m, r_extrema(alpha, gamma).max_abs);
  }
  return m;
}

double kappa_search(double gamma, double bound, double alpha0) {
  const double at0 = r_extrema(alpha0, gamma).max_abs;
  // A margin of 1e-12 keeps a bound equal to max|r(alpha0)| (e.g. 0.987)
  // from being accepted through rounding.
  if (!(bound < 1) || !(at0 < bound - 1e-12)) {
    throw PreconditionError("kappa_search: bound must satisfy max|r(alpha0)| < bound < 1");
  }
  auto feasible = [&](double kappa) { return r_sweep_max(gamma, alpha0, kappa) < bound; };
  double lo = 0, hi = 1e-3;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > 10) return lo;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace pbr::witness
