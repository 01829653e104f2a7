#include <doctest.h>

#include <chrono>
#include <random>

#include "lie_oracle.hpp"
#include "pbr/errors.hpp"
#include "pbr/lie/expansion.hpp"
#include "pbr/lie/flow_word.hpp"
#include "pbr/lie/lie_poly.hpp"
#include "pbr/lie/lyndon.hpp"

using namespace pbr::lie;
using oracle::operator+;

namespace {

std::vector<std::string> strings(const std::vector<LyndonWord>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.str());
  return out;
}

// Brute-force Lyndon test straight from the definition.
bool lyndon_by_rotation(const std::string& w) {
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (!(w < w.substr(k) + w.substr(0, k))) return false;
  }
  return !w.empty();
}

LiePoly random_poly(std::mt19937_64& rng, int max_deg, int max_degree_bound = 12) {
  static const auto basis = lyndon_basis(6);
  std::uniform_int_distribution<int> count(1, 4), coeff(-5, 5), den(1, 3);
  std::vector<LyndonWord> eligible;
  for (const auto& w : basis) {
    if (w.degree() <= max_deg) eligible.push_back(w);
  }
  std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
  LiePoly p(max_degree_bound);
  for (int i = 0, n = count(rng); i < n; ++i) {
    p.add_term(eligible[pick(rng)], Rational(coeff(rng), den(rng)));
  }
  return p;
}

oracle::Assoc expand_series(const LieSeries& s) {
  oracle::Assoc out;
  for (int k = 0; k <= s.order(); ++k) out = out + oracle::expand(s[k]);
  return out;
}

FlowWord random_word(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 3 : 0);
  std::uniform_int_distribution<int> rate(-3, 3);
  const LiePoly F = LiePoly::F(), G = LiePoly::G();
  switch (kind(rng)) {
    case 0: {
      int a = rate(rng), b = rate(rng);
      if (a == 0 && b == 0) a = 1;
      return FlowWord::factor(Rational(a) * F + Rational(b, 2) * G, TimePoly{0, Rational(rate(rng) + 4, 3)});
    }
    case 1:
      return FlowWord::product({random_word(rng, depth - 1), random_word(rng, depth - 1)});
    case 2:
      return FlowWord::inverse(random_word(rng, depth - 1));
    default:
      return FlowWord::conjugate(random_word(rng, depth - 1), random_word(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("lyndon_basis small cases") {
  CHECK(strings(lyndon_basis(1)) == std::vector<std::string>{"F", "G"});
  CHECK(strings(lyndon_basis(3)) == std::vector<std::string>{"F", "G", "FG", "FFG", "FGG"});
  CHECK_THROWS_AS(lyndon_basis(0), pbr::BoundsError);
  CHECK_THROWS_AS(lyndon_basis(13), pbr::BoundsError);
}

TEST_CASE("lyndon_basis matches brute-force enumeration and Witt counts") {
  const auto basis = lyndon_basis(10);
  std::vector<long> per_degree(11, 0);
  for (const auto& w : basis) {
    CHECK(lyndon_by_rotation(w.str()));
    ++per_degree[static_cast<std::size_t>(w.degree())];
  }
  // Witt numbers from the Moebius formula, computed by hand for d <= 5.
  CHECK(per_degree[1] == 2);
  CHECK(per_degree[2] == 1);
  CHECK(per_degree[3] == 2);
  CHECK(per_degree[4] == 3);
  CHECK(per_degree[5] == 6);
  for (int d = 1; d <= 10; ++d) CHECK(per_degree[static_cast<std::size_t>(d)] == witt_number(d));

  // Brute force over all words of length <= 8.
  long brute = 0;
  for (int d = 1; d <= 8; ++d) {
    for (unsigned bits = 0; bits < (1u << d); ++bits) {
      std::string w;
      for (int i = d - 1; i >= 0; --i) w += (bits >> i & 1u) ? 'G' : 'F';
      if (lyndon_by_rotation(w)) ++brute;
    }
  }
  CHECK(brute == static_cast<long>(lyndon_basis(8).size()));
}

TEST_CASE("LyndonWord rejects non-Lyndon words") {
  CHECK_THROWS(LyndonWord("GF"));
  CHECK_THROWS(LyndonWord("FGFG"));
  CHECK_THROWS(LyndonWord(""));
  CHECK_NOTHROW(LyndonWord("FFGFG"));
  auto [u, v] = standard_factorization(LyndonWord("FFG"));
  CHECK(u.str() == "F");
  CHECK(v.str() == "FG");
  auto [x, y] = standard_factorization(LyndonWord("FGG"));
  CHECK(x.str() == "FG");
  CHECK(y.str() == "G");
}

TEST_CASE("bracket examples") {
  const LiePoly F = LiePoly::F(), G = LiePoly::G();
  CHECK(bracket(F, F).is_zero());
  const LiePoly FG = bracket(F, G);
  CHECK(FG.to_string() == "FG");
  CHECK(bracket(G, F).to_string() == "-FG");
  CHECK(bracket(FG, G).to_string() == "FGG");
  CHECK(bracket(FG, F).to_string() == "-FFG");
}

TEST_CASE("bracket truncation drops high-degree terms") {
  const LiePoly F = LiePoly::F(), G = LiePoly::G();
  CHECK(bracket(bracket(F, G), F, 2).is_zero());
  CHECK(bracket(F.truncated(2), bracket(F, G, 2)).is_zero());
}

TEST_CASE("bracket agrees with the commutator in the associative algebra") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const LiePoly p = random_poly(rng, 5), q = random_poly(rng, 5);
    const auto lhs = oracle::expand(bracket(p, q));
    const auto rhs = oracle::commutator(oracle::expand(p), oracle::expand(q), 64);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("antisymmetry and Jacobi hold exactly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const LiePoly a = random_poly(rng, 4), b = random_poly(rng, 4), c = random_poly(rng, 4);
    CHECK((bracket(a, b) + bracket(b, a)).is_zero());
    const LiePoly jacobi =
        bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b);
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("LiePoly arithmetic keeps coefficients nonzero") {
  const LiePoly F = LiePoly::F(), G = LiePoly::G();
  const LiePoly s = F + G - F;
  CHECK(s.terms().size() == 1);
  CHECK(s.coeff("G") == 1);
  CHECK((Rational(0) * s).is_zero());
  CHECK(s.coeff("GF") == 0);
}

TEST_CASE("path_generator: a path followed by its inverse is constant") {
  const FlowWord f = FlowWord::factor(LiePoly::F(), {0, 1});
  CHECK(path_generator(FlowWord::product({f, FlowWord::inverse(f)}), 5).is_zero());
  CHECK_THROWS_AS(path_generator(f, 0), pbr::BoundsError);
  CHECK_THROWS_AS(path_generator(f, 9), pbr::BoundsError);
}

TEST_CASE("path_generator: two factors give exp(tau ad_F) applied to G") {
  const LiePoly F = LiePoly::F(), G = LiePoly::G();
  const FlowWord w = FlowWord::product({FlowWord::factor(F, {0, 1}), FlowWord::factor(G, {0, 1})});
  const LieSeries s = path_generator(w, 5);
  CHECK(s[0] == F + G);
  CHECK(s[1] == bracket(F, G));
  // Independent hand expansion: the pullback is sum_k tau^k/k! ad_F^k G.
  LiePoly term = G;
  Rational fact = 1;
  for (int k = 1; k <= 5; ++k) {
    term = bracket(F, term);
    fact *= k;
    CHECK(s[k] == (Rational(1) / fact) * term);
  }
}

TEST_CASE("path_generator agrees with the associative group-element oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const FlowWord w = random_word(rng, 3);
    const LieSeries s = path_generator(w, 4);
    CHECK(expand_series(s) == oracle::right_generator(w, 5));
  }
  CHECK(expand_series(path_generator(commutator_word(), 5)) ==
        oracle::right_generator(commutator_word(), 6));
}

TEST_CASE("inverse words cancel for random words of depth <= 3") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const FlowWord w = random_word(rng, 3);
    CHECK(path_generator(FlowWord::product({FlowWord::inverse(w), w}), 5).is_zero());
    CHECK(path_generator(FlowWord::product({w, FlowWord::inverse(w)}), 5).is_zero());
  }
}

TEST_CASE("grading: tau^k coefficient has degree k+1 for linear times") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const LieSeries s = path_generator(random_word(rng, 3), 5);
    for (int k = 0; k <= 5; ++k) CHECK(s[k].is_homogeneous(k + 1));
  }
}

TEST_CASE("conjugate normalizes to product(c, a, c^-1)") {
  std::mt19937_64 rng(13);
  const FlowWord a = random_word(rng, 2), c = random_word(rng, 2);
  const FlowWord conj = FlowWord::conjugate(a, c);
  CHECK(path_generator(conj, 5) ==
        path_generator(FlowWord::product({c, a, FlowWord::inverse(c)}), 5));
  CHECK(conj.normalized().kind() == FlowWord::Kind::product);
}

TEST_CASE("conjugating by a fixed flow maps coefficients by exp(ad X)") {
  const LiePoly F = LiePoly::F(), G = LiePoly::G();
  const FlowWord fixed = FlowWord::factor(F - Rational(2) * G, {1});
  const LieSeries base = path_generator(commutator_word(), 5);
  const LieSeries conj = path_generator(FlowWord::conjugate(commutator_word(), fixed), 5);
  for (int k = 0; k <= 5; ++k) CHECK(conj[k].is_zero() == base[k].is_zero());
  // Leading term: exp(ad X) (2P) truncated at degree 6.
  const LiePoly X = F - Rational(2) * G;
  LiePoly expected = base[1], term = base[1];
  for (int n = 1; n <= 5; ++n) {
    term = Rational(1, n) * bracket(X, term, 6);
    expected += term;
  }
  CHECK(conj[1] == expected.truncated(6));
}

TEST_CASE("commutator expansion: 2 tau P + tau^3/6 I") {
  const auto start = std::chrono::steady_clock::now();
  const ExpansionReport r = verify_commutator_expansion(5);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(r.match);
  CHECK(r.series[0].is_zero());
  CHECK(r.series[1].to_string() == "2*FG");
  CHECK(r.series[2].is_zero());
  CHECK(r.series[3].is_homogeneous(4));
  // I = {{P,F},F} + {{P,G},G} = FFFG... computed through the oracle as well.
  const auto I = oracle::expand(Rational(1, 6) *
                                (bracket(bracket(bracket(LiePoly::F(), LiePoly::G()), LiePoly::F()),
                                         LiePoly::F()) +
                                 bracket(bracket(bracket(LiePoly::F(), LiePoly::G()), LiePoly::G()),
                                         LiePoly::G())));
  CHECK(oracle::expand(r.series[3]) == I);
  CHECK(secs < 5.0);
}

TEST_CASE("double bracket expansion: 3 tau^2 (A+B) + tau^4 Q") {
  const ExpansionReport r = verify_double_bracket_expansion(5);
  CHECK(r.match);
  CHECK(r.series[2].to_string() == "-3/2*FFG + 3/2*FGG");
  CHECK(r.series[3].is_zero());
  CHECK(r.series[4].is_homogeneous(5));
  CHECK_FALSE(r.series[4].is_zero());
  MESSAGE("Q = " << r.series[4].to_string());
}

TEST_CASE("expansion JSON layout") {
  const auto j = to_json(verify_commutator_expansion(5));
  CHECK(j["match"] == true);
  CHECK(j["T"] == 5);
  CHECK(j["coefficients"].size() == 6);
  const auto& t1 = j["coefficients"][1]["terms"];
  REQUIRE(t1.size() == 1);
  CHECK(t1[0]["lyndon"] == "FG");
  CHECK(t1[0]["num"] == 2);
  CHECK(t1[0]["den"] == 1);
}
