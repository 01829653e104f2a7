#include "pbr/field/domain.hpp"

#include <numbers>

#include "pbr/errors.hpp"

namespace pbr::field {

namespace {

void require_size(int n) {
  if (n < 16) throw PreconditionError("grid resolution must be at least 16, got " + std::to_string(n));
}

}  // namespace

Domain2 Domain2::torus(int n) {
  require_size(n);
  Domain2 d;
  d.kind = Kind::torus;
  d.n = n;
  d.p1 = d.q1 = 2 * std::numbers::pi;
  return d;
}

Domain2 Domain2::rectangle(int n, double p0, double p1, double q0, double q1, int margin) {
  require_size(n);
  if (!(p1 > p0) || !(q1 > q0)) throw PreconditionError("rectangle bounds must be increasing");
  if (margin < 0 || 2 * margin >= n) throw PreconditionError("margin band does not fit the grid");
  Domain2 d;
  d.kind = Kind::rectangle;
  d.n = n;
  d.p0 = p0;
  d.p1 = p1;
  d.q0 = q0;
  d.q1 = q1;
  d.margin = margin;
  return d;
}

double Domain2::hp() const { return periodic() ? (p1 - p0) / n : (p1 - p0) / (n - 1); }
double Domain2::hq() const { return periodic() ? (q1 - q0) / n : (q1 - q0) / (n - 1); }

bool Domain2::in_margin(int i, int j) const {
  if (periodic()) return false;
  return i < margin || j < margin || i >= n - margin || j >= n - margin;
}

}  // namespace pbr::field
