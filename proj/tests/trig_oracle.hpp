#pragma once

// Test-only symbolic model of trigonometric polynomials as finite sums of
// c_{kl} exp(i(kp + lq)).  Derivatives multiply by i k or i l, products
// convolve, so brackets of any depth are exact up to rounding.

#include <cmath>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "pbr/field/trig.hpp"

namespace oracle {

struct Trig {
  std::map<std::pair<int, int>, std::complex<double>> c;

  static Trig from_terms(const std::vector<pbr::field::TrigTerm>& terms) {
    // a cos t + b sin t = (a - i b)/2 e^{it} + (a + i b)/2 e^{-it}
    Trig t;
    for (const auto& x : terms) {
      t.c[{x.k, x.l}] += std::complex<double>(x.a, -x.b) / 2.0;
      t.c[{-x.k, -x.l}] += std::complex<double>(x.a, x.b) / 2.0;
    }
    return t;
  }

  double operator()(double p, double q) const {
    std::complex<double> s = 0;
    for (const auto& [kl, v] : c) s += v * std::exp(std::complex<double>(0, kl.first * p + kl.second * q));
    return s.real();
  }

  Trig dp() const {
    Trig t;
    for (const auto& [kl, v] : c) t.c[kl] = v * std::complex<double>(0, kl.first);
    return t;
  }
  Trig dq() const {
    Trig t;
    for (const auto& [kl, v] : c) t.c[kl] = v * std::complex<double>(0, kl.second);
    return t;
  }

  friend Trig operator+(Trig a, const Trig& b) {
    for (const auto& [kl, v] : b.c) a.c[kl] += v;
    return a;
  }
  friend Trig operator-(Trig a, const Trig& b) {
    for (const auto& [kl, v] : b.c) a.c[kl] -= v;
    return a;
  }
  friend Trig operator*(const Trig& a, const Trig& b) {
    Trig t;
    for (const auto& [k1, v1] : a.c)
      for (const auto& [k2, v2] : b.c) t.c[{k1.first + k2.first, k1.second + k2.second}] += v1 * v2;
    return t;
  }
};

inline Trig bracket(const Trig& F, const Trig& G) { return F.dq() * G.dp() - F.dp() * G.dq(); }

}  // namespace oracle
