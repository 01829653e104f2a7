#pragma once

#include "pbr/field/jet_field.hpp"

namespace pbr::field {

/// Node values of K o phi^t_H, where phi^t_H is the time-t flow of
/// sgrad H = (-H_q, H_p), integrated per node with classical RK4.
/// Requires steps >= 4; on a rectangle every trajectory must stay inside.
Eigen::ArrayXXd advect(const JetField& H, const JetField& K, double t, int steps);

struct YBoundReport {
  double maxY = 0, bound = 0, slack = 0, tol = 0;
  bool pass = false;
};

/// For the pair (sF, tG): Y = G + F o phi_G - G o phi_{-F} - F (time-1 flows)
/// against (max {{F,G},G} + max {{F,G},F}) / 2.
YBoundReport y_bound_check(const JetField& F, const JetField& G, double s = 0.1, double t = 0.1,
                           int steps = 64, double tol_flow = 1e-4);

}  // namespace pbr::field
