// One line per acceptance criterion; exit status 0 iff every line passes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pbr/field/advect.hpp"
#include "pbr/field/functionals.hpp"
#include "pbr/field/trig.hpp"
#include "pbr/lie/expansion.hpp"
#include "pbr/lie/lyndon.hpp"
#include "pbr/rate/rate_scan.hpp"
#include "pbr/witness/lemma.hpp"
#include "pbr/witness/verify.hpp"

namespace {

using namespace pbr;
using lie::LiePoly;
using lie::Rational;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

LiePoly P() { return lie::bracket(LiePoly::F(), LiePoly::G()); }

Outcome commutator_expansion() {
  const lie::ExpansionReport r = lie::verify_commutator_expansion(5);
  const LiePoly F = LiePoly::F(), G = LiePoly::G();
  const LiePoly I = lie::bracket(lie::bracket(P(), F), F) + lie::bracket(lie::bracket(P(), G), G);
  const bool ok = r.match && r.series[0].is_zero() && r.series[1] == Rational(2) * P() && r.series[2].is_zero() &&
                  r.series[3] == Rational(1, 6) * I;
  return {ok, "tau^1 = " + r.series[1].to_string() + ", tau^3 = " + r.series[3].to_string()};
}

Outcome double_bracket_expansion() {
  const lie::ExpansionReport r = lie::verify_double_bracket_expansion(5);
  const LiePoly F = LiePoly::F(), G = LiePoly::G();
  const LiePoly want = Rational(3, 2) * (lie::bracket(P(), F) + lie::bracket(P(), G));
  const bool ok = r.match && r.series[0].is_zero() && r.series[1].is_zero() && r.series[2] == want &&
                  r.series[3].is_zero() && r.series[4].is_homogeneous(5) && !r.series[4].is_zero();
  return {ok, "tau^2 = " + r.series[2].to_string() + ", tau^4 of pure degree 5"};
}

Outcome lemma_r() {
  const witness::RExtrema e = witness::r_extrema(1.1, 1.63);
  const double a = std::abs(e.at_minus_one + 0.153), b = std::abs(e.at_one - 0.987);
  const double c = std::abs(e.critical_value + 0.860);
  return {a <= 1e-12 && b <= 1e-12 && e.critical_inside && c <= 1e-3,
          fmt("r(-1) = %.15g, r(1) = %.15g, critical value %.6f", e.at_minus_one, e.at_one, e.critical_value)};
}

Outcome witness_verify() {
  const witness::WitnessFields f = witness::build_witness();
  const witness::VerifyReport r = witness::verify_witness(f, {100, 1000, 10000}, 2048, 512);
  std::string d = fmt("max{{F,G},F} = %.9f;", r.base_max);
  for (const auto& row : r.rows)
    d += fmt(" N=%g: ratio_max %.4f ratio_min %.4f", row.N, row.ratio_max, row.ratio_min) +
         fmt(" residual*N %.4f maxR %.4f;", row.residual * row.N, row.maxR);
  d += fmt(" residual*N spread %.3f", r.residual_spread);
  return {r.pass(), d};
}

Outcome landau_hadamard() {
  const field::Domain2 d = field::Domain2::torus(256);
  int passed = 0;
  double worst = INFINITY;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const field::LhReport r = field::lh_check(field::trig_field(d, field::random_trig_terms(2 * s)),
                                              field::trig_field(d, field::random_trig_terms(2 * s + 1)));
    passed += r.pass;
    worst = std::min(worst, r.margin);
  }
  return {passed == 200, fmt("%g/200 pairs pass, smallest margin %.6g (tolerance %.3g)", passed, worst,
                             -field::tol_disc(d))};
}

Outcome psi_identity() {
  const field::Domain2 d = field::Domain2::torus(256);
  const field::JetField F = field::sin(field::coord_p(d)), G = field::sin(field::coord_q(d));
  const field::IdentityReport r = field::square_sum_identity(F, G);
  const double psi = field::psi(F, G);
  return {r.rel_err <= 1e-6 && std::abs(psi - 2) <= 1e-6,
          fmt("relative residual %.3g, Psi = %.15g", r.rel_err, psi)};
}

Outcome numerical_algebra() {
  const field::Domain2 d = field::Domain2::torus(128);
  double jac = 0, zm = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto F = field::trig_field(d, field::random_trig_terms(3 * s));
    const auto G = field::trig_field(d, field::random_trig_terms(3 * s + 1));
    const auto H = field::trig_field(d, field::random_trig_terms(3 * s + 2));
    jac = std::max(jac, field::jacobi_residual(F, G, H));
    zm = std::max(zm, field::zero_mean_residual(F, G));
  }
  const witness::CutoffReport cut = witness::cutoff_witness(witness::build_witness(), 1.0, 256);
  return {jac <= 1e-8 && zm <= 1e-8 && cut.bracket_residual <= 1e-9,
          fmt("Jacobi %.3g, zero mean %.3g, cutoff %.3g", jac, zm, cut.bracket_residual)};
}

Outcome symmetries() {
  const field::Domain2 d = field::Domain2::torus(128);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> w(0.1, 2), sc(0.3, 3);
  double worst = 0;
  bool ok = true;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto F = field::trig_field(d, field::random_trig_terms(2 * s + 7));
    const auto G = field::trig_field(d, field::random_trig_terms(2 * s + 8));
    const field::FunctionalVector v(w(rng), w(rng), w(rng), w(rng));
    std::vector<field::SymmetryReport> reps;
    for (auto e : {field::SymmetryElement::A, field::SymmetryElement::B, field::SymmetryElement::C})
      reps.push_back(field::symmetry_check(v, F, G, e));
    reps.push_back(field::symmetry_check(v, F, G, sc(rng), sc(rng)));
    for (const auto& r : reps) {
      ok = ok && r.pass;
      worst = std::max(worst, r.rel_err);
    }
  }
  return {ok, fmt("20 random pairs x 4 identities, worst relative error %.3g", worst)};
}

Outcome free_lie_algebra() {
  const long witt[8] = {2, 1, 2, 3, 6, 9, 18, 30};
  const auto basis = lie::lyndon_basis(8);
  bool counts = true;
  for (int deg = 1; deg <= 8; ++deg) {
    long n = 0;
    for (const auto& b : basis) n += b.degree() == deg;
    counts = counts && n == witt[deg - 1] && lie::witt_number(deg) == witt[deg - 1];
  }
  std::mt19937_64 rng(21);
  const auto small = lie::lyndon_basis(6);
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), terms(1, 3);
  auto random_poly = [&] {
    LiePoly p(12);
    for (int k = 0, n = terms(rng); k < n; ++k) p.add_term(small[pick(rng)], Rational(num(rng), den(rng)));
    return p;
  };
  int exact = 0;
  for (int t = 0; t < 100; ++t) {
    const LiePoly a = random_poly(), b = random_poly(), c = random_poly();
    const bool anti = (lie::bracket(a, b) + lie::bracket(b, a)).is_zero();
    const bool jac =
        (lie::bracket(lie::bracket(a, b), c) + lie::bracket(lie::bracket(b, c), a) + lie::bracket(lie::bracket(c, a), b))
            .is_zero();
    exact += anti && jac;
  }
  return {counts && exact == 100,
          std::string("Lyndon counts ") + (counts ? "match" : "DIFFER") + fmt(" the Witt numbers; %g/100 triples exact", exact)};
}

Outcome rate_scan() {
  const field::Domain2 d = field::Domain2::torus(256);
  const field::JetField F = field::sin(field::coord_p(d)), G = field::sin(field::coord_q(d));
  const auto eps = rate::log_grid(1e-4, 1e-1, 10);
  const rate::RateScanReport a = rate::rate_report(F, G, eps, rate::PhiKind::max_bracket);
  const rate::RateScanReport again = rate::rate_report(F, G, eps, rate::PhiKind::max_bracket);
  bool same = a.fit.exponent == again.fit.exponent;
  for (std::size_t i = 0; i < a.rows.size(); ++i) same = same && a.rows[i].best_phi == again.rows[i].best_phi;
  const rate::RateScanReport dbl = rate::rate_report(F, G, eps, rate::PhiKind::double_bracket);
  double worst = 0;
  for (std::size_t i = 0; i < a.rows.size(); ++i) worst = std::max(worst, a.rows[i].decrease / a.two_thirds_ref[i]);
  return {a.pass() && same && dbl.pass(),
          fmt("max{F,G}: exponent %.4f, max d/(5 Psi^(1/3) eps^(2/3)) = %.3f; ", a.fit.exponent, worst) +
              std::string(a.strict_decreases ? "all decreases strict; " : "NOT all decreases strict; ") +
              fmt("double: exponent %.4f, C_fit %.4g, residual %.4g, envelope C %.4g; ", dbl.fit.exponent, dbl.fit.C,
                  dbl.fit.residual, dbl.C_one_third) +
              (same ? "repeat run identical" : "repeat run DIFFERS")};
}

Outcome y_bound() {
  const field::Domain2 d = field::Domain2::torus(64);
  const field::YBoundReport r =
      field::y_bound_check(field::sin(field::coord_p(d)), field::sin(field::coord_q(d)), 0.1, 0.1, 64);
  return {r.pass && r.slack >= -1e-4, fmt("max Y %.6g, bound %.6g, slack %.3g", r.maxY, r.bound, r.slack)};
}

struct Criterion {
  int id;
  const char* name;
  double limit;  // seconds; 0 = none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "commutator expansion to tau^5 (exact)", 5, commutator_expansion},
      {2, "double-bracket expansion to tau^5 (exact)", 30, double_bracket_expansion},
      {3, "r values of the lemma", 0, lemma_r},
      {4, "witness: ratios, |R| and residual*N at n = 2048", 120, witness_verify},
      {5, "Landau-Hadamard inequality on 200 random pairs", 60, landau_hadamard},
      {6, "Psi identity and Psi(sin p, sin q) = 2", 0, psi_identity},
      {7, "Jacobi, zero mean and cutoff identities", 0, numerical_algebra},
      {8, "dihedral and scaling symmetries", 0, symmetries},
      {9, "Witt numbers, antisymmetry and Jacobi", 0, free_lie_algebra},
      {10, "rate scan on (sin p, sin q)", 600, rate_scan},
      {11, "Y bound for (0.1 sin p, 0.1 sin q)", 0, y_bound},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit <= 0 || secs < c.limit;
    if (!in_time) o.detail += fmt(" [over the %.0f s limit]", c.limit);
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s  criterion %2d  %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
