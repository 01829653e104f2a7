#pragma once

namespace pbr::witness {

/// r(alpha, gamma, z) = (alpha z + 1)^2 - gamma (alpha + z)
double r_eval(double alpha, double gamma, double z);

struct RExtrema {
  double at_minus_one = 0, at_one = 0;
  double critical_z = 0, critical_value = 0;
  bool critical_inside = false;  // critical point lies in (-1, 1)
  double max_abs = 0;            // max |r| over z in [-1, 1]
};

RExtrema r_extrema(double alpha, double gamma);

/// Largest kappa (bisection to 1e-9) such that max_z |r(alpha, gamma, z)| <
/// bound for every alpha in [alpha0 - kappa, alpha0 + kappa]; the alpha
/// interval is swept at resolution <= 1e-5 with exact inner maxima.
/// Throws PreconditionError unless max|r(alpha0)| < bound < 1.
double kappa_search(double gamma = 1.63, double bound = 0.99, double alpha0 = 1.1);

/// max over alpha in [alpha0 - kappa, alpha0 + kappa] (step <= resolution)
/// of max_z |r|.
double r_sweep_max(double gamma, double alpha0, double kappa, double resolution = 1e-5);

}  // namespace pbr::witness
