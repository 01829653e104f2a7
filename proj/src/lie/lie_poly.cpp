#include "pbr/lie/lie_poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace pbr::lie {

LiePoly::LiePoly(int max_degree) : max_degree_(max_degree) {}

LiePoly LiePoly::F(int max_degree) { return monomial(LyndonWord("F"), 1, max_degree); }
LiePoly LiePoly::G(int max_degree) { return monomial(LyndonWord("G"), 1, max_degree); }

LiePoly LiePoly::monomial(const LyndonWord& w, const Rational& c, int max_degree) {
  LiePoly p(max_degree);
  p.add_term(w, c);
  return p;
}

Rational LiePoly::coeff(std::string_view word) const {
  if (!is_lyndon(word)) return 0;
  auto it = terms_.find(LyndonWord(std::string(word)));
  return it == terms_.end() ? Rational(0) : it->second;
}

int LiePoly::min_term_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

int LiePoly::max_term_degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

bool LiePoly::is_homogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [degree](const auto& t) { return t.first.degree() == degree; });
}

LiePoly& LiePoly::add_term(const LyndonWord& w, const Rational& c) {
  if (w.degree() > max_degree_) return *this;
  Rational value = c;
  value.canonicalize();
  if (value == 0) return *this;
  auto [it, inserted] = terms_.try_emplace(w, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

LiePoly LiePoly::truncated(int max_degree) const {
  LiePoly out(max_degree);
  for (const auto& [w, c] : terms_) out.add_term(w, c);
  return out;
}

LiePoly& LiePoly::operator+=(const LiePoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

LiePoly& LiePoly::operator-=(const LiePoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

LiePoly& LiePoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

std::string LiePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << w.str();
    first = false;
  }
  return os.str();
}

namespace {

// Memo of [P_u, P_v] for u < v.  Per-thread so that the public functions stay
// free of shared mutable state.
using BracketCache = std::map<std::pair<std::string, std::string>, LiePoly>;

BracketCache& cache() {
  thread_local BracketCache c;
  return c;
}

LiePoly bracket_exact(const LiePoly& p, const LiePoly& q) {
  LiePoly out(p.max_term_degree() + q.max_term_degree());
  for (const auto& [u, cu] : p.terms()) {
    for (const auto& [v, cv] : q.terms()) {
      const LiePoly& b = basis_bracket(u, v);
      const Rational c = cu * cv;
      for (const auto& [w, cw] : b.terms()) out.add_term(w, c * cw);
    }
  }
  return out;
}

}  // namespace

const LiePoly& basis_bracket(const LyndonWord& u, const LyndonWord& v) {
  static const LiePoly kZero(kMaxLyndonDegree);
  if (u == v) return kZero;

  auto key = std::make_pair(u.str(), v.str());
  auto& memo = cache();
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const int degree = u.degree() + v.degree();
  LiePoly result(degree);
  if (v < u) {
    result = -basis_bracket(v, u);
  } else if (u.is_letter() || !(standard_factorization(u).second < v)) {
    // (u, v) is the standard factorization of the Lyndon word uv.
    result.add_term(LyndonWord(u.str() + v.str()), 1);
  } else {
    // u = u1 u2 with u2 < v:  [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]].
    auto [u1, u2] = standard_factorization(u);
    const LiePoly p1 = LiePoly::monomial(u1, 1, degree);
    const LiePoly p2 = LiePoly::monomial(u2, 1, degree);
    result = bracket_exact(p1, basis_bracket(u2, v)) - bracket_exact(p2, basis_bracket(u1, v));
  }
  return memo.emplace(std::move(key), std::move(result)).first->second;
}

LiePoly bracket(const LiePoly& p, const LiePoly& q, int max_degree) {
  LiePoly out(max_degree);
  for (const auto& [u, cu] : p.terms()) {
    for (const auto& [v, cv] : q.terms()) {
      if (u.degree() + v.degree() > max_degree) continue;
      const LiePoly& b = basis_bracket(u, v);
      const Rational c = cu * cv;
      for (const auto& [w, cw] : b.terms()) out.add_term(w, c * cw);
    }
  }
  return out;
}

LiePoly bracket(const LiePoly& p, const LiePoly& q) {
  return bracket(p, q, std::min(p.max_degree(), q.max_degree()));
}

}  // namespace pbr::lie
