#pragma once

#include <string>

namespace pbr::field {

/// Sampling grid for fields on the plane.
///
/// A torus domain is [0, 2pi)^2 with n nodes per axis and spacing 2pi/n.  A
/// rectangle includes both end points, h = (b - a)/(n - 1), and reserves an
/// outer band of `margin` cells where compactly supported fields must vanish.
struct Domain2 {
  enum class Kind { torus, rectangle };

  Kind kind = Kind::torus;
  int n = 0;
  double p0 = 0, p1 = 0, q0 = 0, q1 = 0;
  int margin = 0;

  static Domain2 torus(int n);
  static Domain2 rectangle(int n, double p0, double p1, double q0, double q1, int margin = 4);

  bool periodic() const { return kind == Kind::torus; }
  double hp() const;
  double hq() const;
  /// Larger of the two spacings; used to scale discretization tolerances.
  double h() const { return hp() > hq() ? hp() : hq(); }
  double p(int i) const { return p0 + i * hp(); }
  double q(int j) const { return q0 + j * hq(); }
  double cell_area() const { return hp() * hq(); }
  bool in_margin(int i, int j) const;
  std::string kind_name() const { return periodic() ? "torus" : "rectangle"; }

  bool operator==(const Domain2&) const = default;
};

}  // namespace pbr::field
