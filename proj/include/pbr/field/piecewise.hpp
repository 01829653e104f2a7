#pragma once

#include <utility>
#include <vector>

#include "pbr/field/jet_field.hpp"

namespace pbr::field {

/// Piecewise polynomial on knots x_0 < ... < x_m, constant outside.
///
/// Piece k holds coefficients of powers of (x - x_k) on [x_k, x_{k+1}).
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<double> knots, std::vector<std::vector<double>> pieces, double left_value = 0,
                double right_value = 0);

  /// C^4 function through the levels y_k at x_k, joined by the degree-9
  /// smoothstep S(s) = s^5 (126 - 420 s + 540 s^2 - 315 s^3 + 70 s^4); every
  /// derivative of order 1..4 vanishes at each knot.
  static PiecewisePoly level_spline(const std::vector<std::pair<double, double>>& levels);

  double operator()(double x) const { return derivs(x)[0]; }
  Derivs derivs(double x) const;

  /// Antiderivative with value `start` left of x_0.  Requires a zero left
  /// constant; the right constant becomes the total.
  PiecewisePoly antiderivative(double start = 0) const;

  /// Integral over [x_0, x_m] by exact piece integration.
  double integral() const;

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<std::vector<double>>& pieces() const { return pieces_; }
  double left_value() const { return left_; }
  double right_value() const { return right_; }
  double support_begin() const { return knots_.front(); }
  double support_end() const { return knots_.back(); }

 private:
  std::vector<double> knots_;
  std::vector<std::vector<double>> pieces_;
  double left_ = 0, right_ = 0;
};

/// The smoothstep polynomial coefficients (degree 9) used by level_spline.
const std::vector<double>& smoothstep9();

}  // namespace pbr::field
