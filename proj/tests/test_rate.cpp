#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pbr/errors.hpp"
#include "pbr/field/grid.hpp"
#include "pbr/field/trig.hpp"
#include "pbr/rate/rate_scan.hpp"

using namespace pbr::rate;
using pbr::PreconditionError;
namespace field = pbr::field;

namespace {

constexpr double kPi = std::numbers::pi;

struct Pair {
  field::Domain2 d = field::Domain2::torus(128);
  JetField F = field::sin(field::coord_p(d));
  JetField G = field::sin(field::coord_q(d));
};

// Least squares slope and intercept from the normal equations.
std::pair<double, double> ols(const std::vector<double>& x, const std::vector<double>& y) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const long double n = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * (long double)x[i];
    sxy += x[i] * (long double)y[i];
  }
  const long double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {double(b), double((sy - b * sx) / n)};
}

SearchOptions small_search() {
  SearchOptions s;
  s.budget = 20;
  s.search = {64, 2};
  s.final = {128, 8};
  return s;
}

}  // namespace

TEST_CASE("exponent fit on exact power laws") {
  const auto eps = log_grid(1e-4, 1e-1, 10);
  std::vector<double> d1, d2;
  for (double e : eps) {
    d1.push_back(std::pow(e, 2.0 / 3));
    d2.push_back(3 * std::cbrt(e));
  }
  const ExponentFit a = exponent_fit(eps, d1);
  CHECK(std::abs(a.exponent - 2.0 / 3) <= 1e-12);
  CHECK(a.C == doctest::Approx(1).epsilon(1e-12));
  const ExponentFit b = exponent_fit(eps, d2);
  CHECK(std::abs(b.exponent - 1.0 / 3) <= 1e-12);
  CHECK(b.C == doctest::Approx(3).epsilon(1e-12));
  CHECK(b.residual < 1e-12);
}

TEST_CASE("exponent fit on noisy data agrees with a regression oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  const auto eps = log_grid(1e-4, 1e-1, 10);
  std::vector<double> d, x, y;
  for (double e : eps) {
    d.push_back(std::pow(e, 2.0 / 3) * (1 + 0.01 * U(rng)));
    x.push_back(std::log(e));
    y.push_back(std::log(d.back()));
  }
  const ExponentFit f = exponent_fit(eps, d);
  const auto [slope, icept] = ols(x, y);
  CHECK(f.exponent == doctest::Approx(slope).epsilon(1e-10));
  CHECK(std::log(f.C) == doctest::Approx(icept).epsilon(1e-9));
  CHECK(f.exponent >= 0.66);
  CHECK(f.exponent <= 0.68);
}

TEST_CASE("exponent fit drops non-positive decreases") {
  const std::vector<double> eps{1e-3, 1e-2, 1e-1, 1};
  const ExponentFit f = exponent_fit(eps, {0, 0.01, 0.1, 1});
  CHECK(f.dropped == 1);
  CHECK(f.used == 3);
  CHECK(f.warnings.size() == 1);
  CHECK(f.exponent == doctest::Approx(1));
  CHECK_THROWS_AS(exponent_fit(eps, {0, -1, 0, 0}), PreconditionError);
  CHECK_THROWS_AS(exponent_fit({1e-2, 1e-1}, {1, 2}), PreconditionError);
}

TEST_CASE("phi of the unperturbed sine pair") {
  const Pair s;
  // {F,G} = -cos p cos q; {{F,G},F} = cos^2 p sin q; {{F,G},G} = -sin p cos^2 q
  CHECK(phi_value(s.F, s.G, PhiKind::max_bracket) == doctest::Approx(1).epsilon(1e-12));
  CHECK(phi_value(s.F, s.G, PhiKind::double_bracket) == doctest::Approx(2).epsilon(1e-12));
  const SearchResult r = phi_bar_upper(s.F, s.G, 0, PhiKind::max_bracket, FamilyKind::oscillatory);
  CHECK(r.best == r.baseline);
  CHECK(r.evaluations == 0);
}

TEST_CASE("oscillatory member agrees with its closed form") {
  const Pair s;
  const double eps = 1e-2, l = std::pow(eps, -1.0 / 3);
  const Member m{FamilyKind::oscillatory, {std::log(l), kPi, kPi, 1}, 0, eps};
  const Perturbed P = perturb(s.F, s.G, m);
  // {F + e sin(l F + pi), G + e sin(l G + pi)} = (1 - e l cos(l sin p))(1 - e l cos(l sin q)) {F,G}
  double oracle = -INFINITY;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double p = 2 * kPi * i / n, q = 2 * kPi * j / n;
      const double v = (1 - eps * l * std::cos(l * std::sin(p))) * (1 - eps * l * std::cos(l * std::sin(q))) *
                       (-std::cos(p) * std::cos(q));
      oracle = std::max(oracle, v);
    }
  }
  CHECK(phi_value(P.F, P.G, PhiKind::max_bracket, {128, 16}) == doctest::Approx(oracle).epsilon(1e-6));
  CHECK(oracle < 1);
  const SearchResult r = phi_bar_upper(s.F, s.G, eps, PhiKind::max_bracket, FamilyKind::oscillatory, small_search());
  CHECK(r.best < 1);
  CHECK_FALSE(r.warning);
}

TEST_CASE("every family member stays in the eps-ball") {
  const Pair s;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-3, 3);
  const double eps = 0.05;
  for (int k = 0; k < 30; ++k) {
    const std::vector<Member> ms{
        {FamilyKind::oscillatory, {U(rng), U(rng), U(rng), U(rng)}, 0, eps},
        {FamilyKind::modulated, {U(rng), U(rng), U(rng), U(rng), U(rng)}, 0, eps},
        {FamilyKind::random_fourier, {U(rng)}, static_cast<std::uint64_t>(k), eps}};
    for (const Member& m : ms) {
      const Perturbed P = perturb(s.F, s.G, m);
      double dF = 0, dG = 0;
      for (int i = 0; i < 64; ++i) {
        for (int j = 0; j < 64; ++j) {
          const double p = 2 * kPi * i / 64 + 0.01, q = 2 * kPi * j / 64 + 0.02;
          dF = std::max(dF, std::abs(P.F.value(p, q) - s.F.value(p, q)));
          dG = std::max(dG, std::abs(P.G.value(p, q) - s.G.value(p, q)));
        }
      }
      CHECK(dF <= eps * (1 + 1e-12));
      CHECK(dG <= eps * (1 + 1e-12));
    }
  }
}

TEST_CASE("warm-started scans never increase with eps and are reproducible") {
  const Pair s;
  RateOptions opt;
  opt.search = small_search();
  opt.families = {FamilyKind::oscillatory};
  const auto eps = log_grid(1e-3, 1e-1, 4);
  field::set_thread_count(1);
  const RateScanReport a = rate_report(s.F, s.G, eps, PhiKind::max_bracket, opt);
  field::set_thread_count(3);
  const RateScanReport b = rate_report(s.F, s.G, eps, PhiKind::max_bracket, opt);
  field::set_thread_count(0);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].best_phi == b.rows[i].best_phi);
    CHECK(a.rows[i].params == b.rows[i].params);
    CHECK(a.rows[i].decrease <= a.baseline);
    if (i) CHECK(a.rows[i].best_phi <= a.rows[i - 1].best_phi + 1e-12);
  }
  CHECK(a.fit.exponent == b.fit.exponent);
  CHECK(a.strict_decreases);
  CHECK(a.two_thirds_ok);
}

TEST_CASE("commuting pair flags Psi = 0") {
  const field::Domain2 d = field::Domain2::torus(64);
  const JetField F = field::sin(field::coord_p(d)), G = field::cos(field::coord_p(d));
  RateOptions opt;
  opt.search = small_search();
  opt.search.budget = 4;
  opt.families = {FamilyKind::oscillatory};
  const RateScanReport r = rate_report(F, G, log_grid(1e-3, 1e-1, 3), PhiKind::max_bracket, opt);
  CHECK(r.psi_zero);
  CHECK(r.two_thirds_ref.empty());
  CHECK_FALSE(r.pass());
}

TEST_CASE("rate scan preconditions") {
  const Pair s;
  CHECK_THROWS_AS(rate_report(s.F, s.G, {1e-2, 2e-2, 5e-2}, PhiKind::max_bracket), PreconditionError);
  SearchOptions none = small_search();
  none.budget = 0;
  CHECK_THROWS_AS(phi_bar_upper(s.F, s.G, 1e-2, PhiKind::max_bracket, FamilyKind::oscillatory, none),
                  PreconditionError);
  CHECK_THROWS_AS(phi_bar_upper(s.F, s.G, -1, PhiKind::max_bracket, FamilyKind::oscillatory), PreconditionError);
  const JetField sampled = field::sampled_field(s.d, field::sample(s.F));
  CHECK_THROWS_AS(rate_report(sampled, s.G, log_grid(1e-4, 1e-1, 4), PhiKind::max_bracket), PreconditionError);
}

TEST_CASE("reduced pipeline on the sine pair stays below the two-thirds envelope") {
  const Pair s;
  RateOptions opt;
  opt.search = small_search();
  const RateScanReport r = rate_report(s.F, s.G, log_grid(1e-4, 1e-1, 5), PhiKind::max_bracket, opt);
  CHECK(r.strict_decreases);
  CHECK(r.fit.exponent >= 0.55);
  CHECK(r.two_thirds_ok);
  CHECK(r.psi == doctest::Approx(2).epsilon(1e-6));
}
