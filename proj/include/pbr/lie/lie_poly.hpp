#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

#include "pbr/lie/lyndon.hpp"

namespace pbr::lie {

using Rational = mpq_class;

/// Element of the free Lie algebra on {F, G} over the rationals, expanded in
/// the Lyndon basis and truncated above `max_degree`.
///
/// Stored coefficients are never zero.  Every operation that could produce a
/// term of degree greater than max_degree drops it.
class LiePoly {
 public:
  using Terms = std::map<LyndonWord, Rational, DegLexLess>;

  explicit LiePoly(int max_degree = kMaxLyndonDegree);

  static LiePoly F(int max_degree = kMaxLyndonDegree);
  static LiePoly G(int max_degree = kMaxLyndonDegree);
  /// Single basis element with coefficient `c`.
  static LiePoly monomial(const LyndonWord& w, const Rational& c,
                          int max_degree = kMaxLyndonDegree);

  int max_degree() const { return max_degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of the basis element spelled by `word`; zero when absent.
  Rational coeff(std::string_view word) const;

  /// Smallest / largest degree present.  Zero polynomial reports 0 for both.
  int min_term_degree() const;
  int max_term_degree() const;
  bool is_homogeneous(int degree) const;

  /// Adds c * P_w.  Silently drops the term if its degree exceeds max_degree.
  LiePoly& add_term(const LyndonWord& w, const Rational& c);

  /// Copy with a different truncation bound (terms above it discarded).
  LiePoly truncated(int max_degree) const;

  LiePoly& operator+=(const LiePoly& other);
  LiePoly& operator-=(const LiePoly& other);
  LiePoly& operator*=(const Rational& c);

  friend LiePoly operator+(LiePoly a, const LiePoly& b) { return a += b; }
  friend LiePoly operator-(LiePoly a, const LiePoly& b) { return a -= b; }
  friend LiePoly operator-(LiePoly a) { return a *= Rational(-1); }
  friend LiePoly operator*(const Rational& c, LiePoly a) { return a *= c; }
  friend LiePoly operator*(LiePoly a, const Rational& c) { return a *= c; }

  /// Equality of the represented elements (truncation bound ignored).
  friend bool operator==(const LiePoly& a, const LiePoly& b) { return a.terms_ == b.terms_; }

  /// e.g. "3/2*FGG - 3/2*FFG"; "0" for the zero element.
  std::string to_string() const;

 private:
  Terms terms_;
  int max_degree_;
};

/// Lie bracket [p, q] rewritten in the Lyndon basis, truncated at max_degree.
LiePoly bracket(const LiePoly& p, const LiePoly& q, int max_degree);

/// Same, truncated at min(p.max_degree(), q.max_degree()).
LiePoly bracket(const LiePoly& p, const LiePoly& q);

/// [P_u, P_v] for two basis elements, exact (no truncation).
const LiePoly& basis_bracket(const LyndonWord& u, const LyndonWord& v);

}  // namespace pbr::lie
