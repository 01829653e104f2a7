#include "pbr/field/piecewise.hpp"

#include <algorithm>
#include <cmath>

#include "pbr/errors.hpp"

namespace pbr::field {

const std::vector<double>& smoothstep9() {
  static const std::vector<double> s{0, 0, 0, 0, 0, 126, -420, 540, -315, 70};
  return s;
}

PiecewisePoly::PiecewisePoly(std::vector<double> knots, std::vector<std::vector<double>> pieces,
                             double left_value, double right_value)
    : knots_(std::move(knots)), pieces_(std::move(pieces)), left_(left_value), right_(right_value) {
  if (knots_.size() < 2 || pieces_.size() + 1 != knots_.size()) {
    throw PreconditionError("piecewise polynomial needs m+1 knots for m pieces");
  }
  for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
    if (!(knots_[k + 1] > knots_[k])) throw PreconditionError("piecewise polynomial knots must increase");
  }
}

PiecewisePoly PiecewisePoly::level_spline(const std::vector<std::pair<double, double>>& levels) {
  if (levels.size() < 2) throw PreconditionError("level spline needs at least two levels");
  std::vector<double> knots;
  std::vector<std::vector<double>> pieces;
  const auto& s = smoothstep9();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    knots.push_back(levels[k].first);
    if (k + 1 == levels.size()) break;
    const double L = levels[k + 1].first - levels[k].first;
    const double dy = levels[k + 1].second - levels[k].second;
    std::vector<double> c(s.size());
    double scale = 1;
    for (std::size_t j = 0; j < s.size(); ++j) {
      c[j] = dy * s[j] * scale;
      scale /= L;
    }
    c[0] += levels[k].second;
    pieces.push_back(std::move(c));
  }
  return PiecewisePoly(std::move(knots), std::move(pieces), levels.front().second, levels.back().second);
}

Derivs PiecewisePoly::derivs(double x) const {
  Derivs out{};
  if (x < knots_.front()) {
    out[0] = left_;
    return out;
  }
  if (x >= knots_.back()) {
    out[0] = right_;
    return out;
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
  const std::vector<double>& c = pieces_[k];
  const double t = x - knots_[k];
  // Horner for the value and the first four derivatives together.
  for (std::size_t j = c.size(); j-- > 0;) {
    for (int d = 4; d >= 1; --d) out[d] = out[d] * t + d * out[d - 1];
    out[0] = out[0] * t + c[j];
  }
  return out;
}

PiecewisePoly PiecewisePoly::antiderivative(double start) const {
  // Tails below 1e-12 are rounding residue of an exactly cancelling integral.
  if (std::abs(left_) > 1e-12) throw PreconditionError("antiderivative of a function with nonzero left tail");
  std::vector<std::vector<double>> pieces;
  double acc = start;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const std::vector<double>& c = pieces_[k];
    std::vector<double> a(c.size() + 1);
    a[0] = acc;
    for (std::size_t j = 0; j < c.size(); ++j) a[j + 1] = c[j] / static_cast<double>(j + 1);
    const double L = knots_[k + 1] - knots_[k];
    double v = 0;
    for (std::size_t j = a.size(); j-- > 0;) v = v * L + a[j];
    acc = v;
    pieces.push_back(std::move(a));
  }
  if (std::abs(right_) > 1e-12) throw PreconditionError("antiderivative of a function with nonzero right tail");
  return PiecewisePoly(knots_, std::move(pieces), start, acc);
}

double PiecewisePoly::integral() const {
  double total = 0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const double L = knots_[k + 1] - knots_[k];
    double v = 0;
    const std::vector<double>& c = pieces_[k];
    for (std::size_t j = c.size(); j-- > 0;) v = v * L + c[j] / static_cast<double>(j + 1);
    total += v * L;
  }
  return total;
}

}  // namespace pbr::field
