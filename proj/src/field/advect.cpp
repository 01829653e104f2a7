#include "pbr/field/advect.hpp"

#include <cmath>

#include "pbr/errors.hpp"
#include "pbr/field/bracket.hpp"
#include "pbr/field/grid.hpp"

namespace pbr::field {

namespace {

struct Point {
  double p, q;
};

Point velocity(const JetField& H, Point x) {
  const Jet j = H.jet(x.p, x.q, 1);
  return {-j.derivative(0, 1), j.derivative(1, 0)};
}

}  // namespace

Eigen::ArrayXXd advect(const JetField& H, const JetField& K, double t, int steps) {
  require_same_domain(H, K);
  if (steps < 4) throw PreconditionError("advect needs at least 4 integrator steps");
  const Domain2& d = H.domain();
  const double dt = t / steps;
  Eigen::ArrayXXd out(d.n, d.n);
  parallel_for(d.n, [&](int j) {
    for (int i = 0; i < d.n; ++i) {
      Point x{d.p(i), d.q(j)};
      for (int s = 0; s < steps && t != 0; ++s) {
        const Point k1 = velocity(H, x);
        const Point k2 = velocity(H, {x.p + 0.5 * dt * k1.p, x.q + 0.5 * dt * k1.q});
        const Point k3 = velocity(H, {x.p + 0.5 * dt * k2.p, x.q + 0.5 * dt * k2.q});
        const Point k4 = velocity(H, {x.p + dt * k3.p, x.q + dt * k3.q});
        x.p += dt / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
        x.q += dt / 6 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q);
      }
      if (!d.periodic() && (x.p < d.p0 || x.p > d.p1 || x.q < d.q0 || x.q > d.q1)) {
        throw PreconditionError("trajectory from (" + std::to_string(d.p(i)) + ", " + std::to_string(d.q(j)) +
                                ") leaves the rectangle");
      }
      out(i, j) = K.jet(x.p, x.q, 0).value();
    }
  });
  return out;
}

YBoundReport y_bound_check(const JetField& F, const JetField& G, double s, double t, int steps,
                           double tol_flow) {
  require_same_domain(F, G);
  const JetField sF = s * F, tG = t * G;
  const Eigen::ArrayXXd Y =
      sample(tG) + advect(tG, sF, 1.0, steps) - advect(-sF, tG, 1.0, steps) - sample(sF);
  const JetField P = poisson(sF, tG);
  YBoundReport r;
  r.maxY = extrema(Y).max;
  r.bound = (extrema(sample(poisson(P, tG))).max + extrema(sample(poisson(P, sF))).max) / 2;
  r.slack = r.bound - r.maxY;
  r.tol = tol_flow;
  r.pass = r.slack >= -tol_flow;
  return r;
}

}  // namespace pbr::field
