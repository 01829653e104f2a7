#pragma once

// Test-only model of the free associative algebra Q<F,G>.  The free Lie
// algebra embeds in it via [x, y] = xy - yx, which gives an independent
// route for checking the Lyndon rewriting and the flow calculus.

#include <map>
#include <string>

#include "pbr/lie/flow_word.hpp"
#include "pbr/lie/lie_poly.hpp"

namespace oracle {

using pbr::lie::Rational;
using Assoc = std::map<std::string, Rational>;

inline void add(Assoc& a, const std::string& w, const Rational& c) {
  if (c == 0) return;
  auto& slot = a[w];
  slot += c;
  if (slot == 0) a.erase(w);
}

inline Assoc operator+(Assoc a, const Assoc& b) {
  for (const auto& [w, c] : b) add(a, w, c);
  return a;
}

inline Assoc scale(Assoc a, const Rational& s) {
  if (s == 0) return {};
  for (auto& [w, c] : a) c *= s;
  return a;
}

inline Assoc mul(const Assoc& a, const Assoc& b, std::size_t max_len) {
  Assoc out;
  for (const auto& [u, cu] : a) {
    for (const auto& [v, cv] : b) {
      if (u.size() + v.size() <= max_len) add(out, u + v, cu * cv);
    }
  }
  return out;
}

inline Assoc commutator(const Assoc& a, const Assoc& b, std::size_t max_len) {
  return mul(a, b, max_len) + scale(mul(b, a, max_len), -1);
}

/// Standard bracketing of a Lyndon word, expanded as a noncommutative polynomial.
inline Assoc expand_word(const pbr::lie::LyndonWord& w) {
  if (w.is_letter()) return {{w.str(), 1}};
  auto [u, v] = pbr::lie::standard_factorization(w);
  return commutator(expand_word(u), expand_word(v), 64);
}

inline Assoc expand(const pbr::lie::LiePoly& p) {
  Assoc out;
  for (const auto& [w, c] : p.terms()) out = out + scale(expand_word(w), c);
  return out;
}

/// exp(c X) for a degree-1 X and scalar c, truncated at word length max_len.
inline Assoc exp_linear(const Assoc& X, const Rational& c, std::size_t max_len) {
  Assoc out{{"", 1}};
  Assoc term{{"", 1}};
  for (std::size_t n = 1; n <= max_len; ++n) {
    term = scale(mul(term, X, max_len), c / Rational(static_cast<long>(n)));
    out = out + term;
  }
  return out;
}

/// Group-like element of a flow word whose factors have time c*tau.  Each
/// letter carries exactly one tau, so tau is implicit in the word length.
inline Assoc group_element(const pbr::lie::FlowWord& w, std::size_t max_len) {
  using K = pbr::lie::FlowWord::Kind;
  switch (w.kind()) {
    case K::factor: {
      const auto& t = w.time();
      const Rational rate = t.size() > 1 ? t[1] : Rational(0);
      return exp_linear(expand(w.generator()), rate, max_len);
    }
    case K::product: {
      Assoc acc{{"", 1}};
      for (const auto& c : w.children()) acc = mul(acc, group_element(c, max_len), max_len);
      return acc;
    }
    case K::inverse: {
      // inverse of a group-like element g = 1 + x:  sum (-x)^n
      Assoc x = group_element(w.children()[0], max_len);
      add(x, "", -1);
      Assoc out{{"", 1}};
      Assoc term{{"", 1}};
      for (std::size_t n = 1; n <= max_len; ++n) {
        term = scale(mul(term, x, max_len), -1);
        out = out + term;
      }
      return out;
    }
    case K::conjugate:
      return group_element(w.normalized(), max_len);
  }
  return {};
}

/// (d g / d tau) g^{-1}, truncated; the tau^k part consists of words of
/// length k + 1.
inline Assoc right_generator(const pbr::lie::FlowWord& w, std::size_t max_len) {
  const Assoc g = group_element(w, max_len);
  Assoc dg;
  for (const auto& [word, c] : g) {
    if (!word.empty()) add(dg, word, c * Rational(static_cast<long>(word.size())));
  }
  const Assoc ginv = group_element(pbr::lie::FlowWord::inverse(w), max_len);
  // d/dtau lowers the tau power by one, so a word of length L in dg sits at
  // tau^{L-1}; multiplying by ginv keeps the "length = power + 1" grading.
  return mul(dg, ginv, max_len);
}

}  // namespace oracle
