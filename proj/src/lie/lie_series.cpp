#include "pbr/lie/lie_series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pbr::lie {

LieSeries::LieSeries(int order) {
  if (order < 0) throw std::invalid_argument("LieSeries: negative order");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, LiePoly(order + 1));
}

bool LieSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const LiePoly& p) { return p.is_zero(); });
}

LieSeries& LieSeries::operator+=(const LieSeries& other) {
  const int n = std::min(order(), other.order());
  for (int k = 0; k <= n; ++k) coeff(k) += other[k];
  return *this;
}

LieSeries& LieSeries::operator-=(const LieSeries& other) {
  const int n = std::min(order(), other.order());
  for (int k = 0; k <= n; ++k) coeff(k) -= other[k];
  return *this;
}

LieSeries& LieSeries::operator*=(const Rational& c) {
  for (auto& p : coeffs_) p *= c;
  return *this;
}

LieSeries LieSeries::derivative() const {
  LieSeries out(order());
  for (int k = 1; k <= order(); ++k) out.coeff(k - 1) = Rational(k) * (*this)[k];
  return out;
}

LieSeries LieSeries::integral() const {
  LieSeries out(order());
  for (int k = 0; k < order(); ++k) out.coeff(k + 1) = Rational(1, k + 1) * (*this)[k];
  return out;
}

std::string LieSeries::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (int k = 0; k <= order(); ++k) {
    if ((*this)[k].is_zero()) continue;
    if (any) os << " + ";
    os << "tau^" << k << " * (" << (*this)[k].to_string() << ")";
    any = true;
  }
  if (!any) os << "0";
  os << " + O(tau^" << order() + 1 << ")";
  return os.str();
}

LieSeries bracket(const LieSeries& a, const LieSeries& b) {
  const int order = std::min(a.order(), b.order());
  LieSeries out(order);
  for (int i = 0; i <= order; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (b[j].is_zero()) continue;
      out.coeff(i + j) += bracket(a[i], b[j], order + 1);
    }
  }
  return out;
}

}  // namespace pbr::lie
