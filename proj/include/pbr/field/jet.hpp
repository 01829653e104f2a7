#pragma once

#include <array>
#include <cassert>

namespace pbr::field {

/// Truncated bivariate Taylor polynomial in (p, q) about a point.
///
/// Coefficients are stored normalized, c(i, j) = d^i_p d^j_q f / (i! j!), for
/// i + j <= order with order <= 4.  Arithmetic truncates at the smaller order
/// of the operands, so jets behave like forward-mode derivatives of order 4.
template <typename Scalar>
class Jet2 {
 public:
  static constexpr int kMaxOrder = 4;
  static constexpr int kSize = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;

  explicit Jet2(int order = kMaxOrder) : order_(order) { c_.fill(Scalar(0)); }

  static Jet2 constant(Scalar v, int order = kMaxOrder) {
    Jet2 j(order);
    j.c_[0] = v;
    return j;
  }
  static Jet2 variable_p(Scalar p0, int order = kMaxOrder) {
    Jet2 j = constant(p0, order);
    if (order >= 1) j.coeff(1, 0) = Scalar(1);
    return j;
  }
  static Jet2 variable_q(Scalar q0, int order = kMaxOrder) {
    Jet2 j = constant(q0, order);
    if (order >= 1) j.coeff(0, 1) = Scalar(1);
    return j;
  }

  static constexpr int index(int i, int j) {
    const int d = i + j;
    return d * (d + 1) / 2 + j;
  }

  int order() const { return order_; }
  Scalar value() const { return c_[0]; }
  Scalar& coeff(int i, int j) { return c_[index(i, j)]; }
  Scalar coeff(int i, int j) const { return c_[index(i, j)]; }

  /// The partial derivative d^i_p d^j_q at the expansion point.
  Scalar derivative(int i, int j) const {
    if (i + j > order_) return Scalar(0);
    return coeff(i, j) * Scalar(factorial(i) * factorial(j));
  }

  /// Jet of the p-derivative; its order drops by one.
  Jet2 dp() const {
    assert(order_ >= 1);
    Jet2 out(order_ - 1);
    for (int d = 0; d < order_; ++d)
      for (int j = 0; j <= d; ++j) out.coeff(d - j, j) = Scalar(d - j + 1) * coeff(d - j + 1, j);
    return out;
  }

  Jet2 dq() const {
    assert(order_ >= 1);
    Jet2 out(order_ - 1);
    for (int d = 0; d < order_; ++d)
      for (int j = 0; j <= d; ++j) out.coeff(d - j, j) = Scalar(j + 1) * coeff(d - j, j + 1);
    return out;
  }

  /// Keep only terms of total degree <= order.
  Jet2 truncated(int order) const {
    Jet2 out(order < order_ ? order : order_);
    for (int k = 0; k < size(out.order_); ++k) out.c_[k] = c_[k];
    return out;
  }

  Jet2& operator+=(const Jet2& o) {
    order_ = order_ < o.order_ ? order_ : o.order_;
    for (int k = 0; k < size(order_); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    order_ = order_ < o.order_ ? order_ : o.order_;
    for (int k = 0; k < size(order_); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet2& operator*=(Scalar s) {
    for (int k = 0; k < size(order_); ++k) c_[k] *= s;
    return *this;
  }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, Scalar s) { return a *= s; }
  friend Jet2 operator*(Scalar s, Jet2 a) { return a *= s; }
  friend Jet2 operator-(Jet2 a) { return a *= Scalar(-1); }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    const int order = a.order_ < b.order_ ? a.order_ : b.order_;
    Jet2 out(order);
    for (int d1 = 0; d1 <= order; ++d1) {
      for (int j1 = 0; j1 <= d1; ++j1) {
        const Scalar x = a.coeff(d1 - j1, j1);
        if (x == Scalar(0)) continue;
        for (int d2 = 0; d1 + d2 <= order; ++d2) {
          for (int j2 = 0; j2 <= d2; ++j2) {
            out.coeff(d1 - j1 + d2 - j2, j1 + j2) += x * b.coeff(d2 - j2, j2);
          }
        }
      }
    }
    return out;
  }

  /// f(x) for a univariate f given its derivatives f^(k)(x.value()), k = 0..4.
  friend Jet2 compose(const std::array<Scalar, kMaxOrder + 1>& f, const Jet2& x) {
    Jet2 d = x;
    d.c_[0] = Scalar(0);
    // Horner in the nilpotent increment d.
    Jet2 out = constant(f[x.order_] / Scalar(factorial(x.order_)), x.order_);
    for (int k = x.order_ - 1; k >= 0; --k) {
      out = out * d;
      out.c_[0] += f[k] / Scalar(factorial(k));
    }
    return out;
  }

 private:
  static constexpr int size(int order) { return (order + 1) * (order + 2) / 2; }
  static constexpr int factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

  int order_;
  std::array<Scalar, kSize> c_;
};

}  // namespace pbr::field
