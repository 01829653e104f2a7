#pragma once

#include <string>
#include <vector>

#include "pbr/lie/lie_poly.hpp"

namespace pbr::lie {

/// Truncated power series in the path parameter tau with LiePoly
/// coefficients: sum_{k=0}^{T} tau^k * c_k.
///
/// Coefficients carry truncation bound T + 1; for paths built from factors
/// with linear time the tau^k coefficient has Lie degree k + 1, so nothing
/// is lost.
class LieSeries {
 public:
  explicit LieSeries(int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const LiePoly& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  LiePoly& coeff(int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<LiePoly>& coefficients() const { return coeffs_; }

  bool is_zero() const;

  LieSeries& operator+=(const LieSeries& other);
  LieSeries& operator-=(const LieSeries& other);
  LieSeries& operator*=(const Rational& c);
  friend LieSeries operator+(LieSeries a, const LieSeries& b) { return a += b; }
  friend LieSeries operator-(LieSeries a, const LieSeries& b) { return a -= b; }
  friend LieSeries operator-(LieSeries a) { return a *= Rational(-1); }
  friend LieSeries operator*(const Rational& c, LieSeries a) { return a *= c; }
  friend bool operator==(const LieSeries& a, const LieSeries& b) { return a.coeffs_ == b.coeffs_; }

  /// d/dtau, keeping the truncation order.
  LieSeries derivative() const;
  /// Antiderivative with zero constant term; the tau^{T+1} term is dropped.
  LieSeries integral() const;

  std::string to_string() const;

 private:
  std::vector<LiePoly> coeffs_;
};

/// Cauchy product of brackets, truncated at the smaller order.
LieSeries bracket(const LieSeries& a, const LieSeries& b);

}  // namespace pbr::lie
