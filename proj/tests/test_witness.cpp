#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "pbr/errors.hpp"
#include "pbr/field/bracket.hpp"
#include "pbr/witness/lemma.hpp"
#include "pbr/witness/verify.hpp"

using namespace pbr::witness;
using pbr::PreconditionError;

namespace {

const WitnessFields& fields() {
  static const WitnessFields f = build_witness();
  return f;
}

// max_z |r| over [-1, 1] by brute force on a grid of z including the ends.
double scan_abs_r(double alpha, double gamma) {
  double m = 0;
  for (int k = 0; k <= 20000; ++k) m = std::max(m, std::abs(r_eval(alpha, gamma, -1 + k * 1e-4)));
  return m;
}

}  // namespace

TEST_CASE("r at the lemma's fixed values") {
  CHECK(r_eval(1.1, 1.63, -1) == doctest::Approx(-0.153).epsilon(1e-12));
  CHECK(r_eval(1.1, 1.63, 1) == doctest::Approx(0.987).epsilon(1e-12));
  const RExtrema e = r_extrema(1.1, 1.63);
  CHECK(e.critical_inside);
  CHECK(e.critical_value == doctest::Approx(-0.57 * 0.57 / (4 * 1.21) - 0.793).epsilon(1e-12));
  CHECK(std::abs(e.critical_value + 0.86) < 0.005);
  CHECK(e.max_abs == doctest::Approx(0.987).epsilon(1e-12));
  // 1.21 z^2 + 0.57 z - 0.793 at arbitrary z
  for (double z : {-0.7, -0.2, 0.0, 0.31, 0.9})
    CHECK(r_eval(1.1, 1.63, z) == doctest::Approx(1.21 * z * z + 0.57 * z - 0.793).epsilon(1e-12));
}

TEST_CASE("kappa agrees with a dense (alpha, z) scan") {
  const double kappa = kappa_search();
  // walk alpha outward at 1e-5 until the brute-force max reaches 0.99
  double oracle = 0;
  for (int k = 1;; ++k) {
    const double da = k * 1e-5;
    if (scan_abs_r(1.1 + da, 1.63) >= 0.99 || scan_abs_r(1.1 - da, 1.63) >= 0.99) break;
    oracle = da;
  }
  CHECK(std::abs(kappa - oracle) <= 2e-5);
  CHECK(kappa == doctest::Approx(0.003 / 2.57).epsilon(0.01));
  CHECK(r_sweep_max(1.63, 1.1, kappa, 1e-4) < 0.99);
  CHECK_THROWS_AS(kappa_search(1.63, 0.987), PreconditionError);
  CHECK(kappa_search(1.63, 1.0 - 1e-9) > kappa);
}

TEST_CASE("witness invariants hold on fine 1-D grids") {
  for (const InvariantCheck& c : check_invariants(fields())) {
    INFO(c.name << ": value " << c.value << " bound " << c.bound);
    CHECK(c.pass);
  }
}

TEST_CASE("integral of w by Simpson quadrature") {
  const WitnessFields& f = fields();
  const WitnessConfig& c = f.config();
  auto simpson = [&](double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f.w(a)[0] + f.w(b)[0];
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4 : 2) * f.w(a + k * h)[0];
    return s * h / 3;
  };
  const double total = simpson(f.q_support_begin(), c.c1, 200000) + simpson(c.c1, c.c4(), 300000) +
                       simpson(c.c4(), f.q_support_end(), 400000);
  CHECK(std::abs(total) < 1e-8);
}

TEST_CASE("build rejects infeasible configurations") {
  WitnessConfig c;
  c.w_tail = 20;
  CHECK_THROWS_AS(build_witness(c), PreconditionError);
  c = {};
  c.delta = 0.5;  // the wiggle pushes a out of the kappa band
  CHECK_THROWS_AS(build_witness(c), PreconditionError);
  c = {};
  c.N_list = {0};
  CHECK_THROWS_AS(build_witness(c), PreconditionError);
  c = {};
  c.c1 = 30;
  CHECK_THROWS_AS(build_witness(c), PreconditionError);
}

TEST_CASE("F_N converges uniformly to F") {
  const WitnessFields& f = fields();
  const auto patches = verification_patches(f, 256, 256);
  for (int N : {100, 1000}) {
    double m = 0;
    for (const auto& d : patches) {
      const JetField FN = f.F_N(d, N), F = f.F(d);
      for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j) m = std::max(m, std::abs(FN.value(d.p(i), d.q(j)) - F.value(d.p(i), d.q(j))));
    }
    CHECK(m <= f.a_sup() / N);
    CHECK(f.a_sup() <= 1.2);
  }
}

TEST_CASE("jet double bracket matches the closed form") {
  const WitnessFields& f = fields();
  const WitnessConfig& c = f.config();
  const auto d = verification_patches(f, 2048, 512)[1];
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> P(0, 3), Q(c.c1 - 0.5, c.c4() + 0.5);
  for (int N : {100, 1000}) {
    const JetField FN = f.F_N(d, N), G = f.G(d);
    const JetField X = pbr::field::poisson(pbr::field::poisson(FN, G), FN);
    for (int k = 0; k < 200; ++k) {
      const double p = P(rng), q = Q(rng);
      const auto u = f.u(p), w = f.w(q), a = f.a(q);
      const double s = std::sin(N * u[0]), cs = std::cos(N * u[0]), t = 1 + a[0] * cs;
      // {{F_N,G},F_N} = u'^2 R - w a' sin(Nu) u'' (1 + a cos Nu) / N
      const double want = u[1] * u[1] * (w[1] * t * t + w[0] * a[1] * (a[0] + cs)) - w[0] * a[1] * s * u[2] * t / N;
      CHECK(X.value(p, q) == doctest::Approx(want).epsilon(1e-9).scale(1));
    }
  }
}

TEST_CASE("R is bounded by 0.99 and by 0.36 off the core") {
  const WitnessFields& f = fields();
  for (int N : {100, 1000}) {
    const RBoundReport r = r_bound_check(f, N, 1024, 256);
    INFO("N " << N << " max|R| " << r.max_abs_R << " at (" << r.p_at << ", " << r.q_at << ")");
    CHECK(r.max_abs_R <= 0.99);
    CHECK(r.case2_envelope <= 0.36);
    CHECK(r.pass);
  }
  // beyond every support a = 0 and w' = 0
  CHECK(f.R(1.3, f.q_support_end() + 1, 100) == 0);
  CHECK(f.R(1.3, f.q_support_begin() - 1, 100) == 0);
  const auto d = verification_patches(f, 64, 64)[0];
  CHECK(r_field(f, d, 100).value(1.3, f.config().c2()) == f.R(1.3, f.config().c2(), 100));
}

TEST_CASE("double-bracket maxima drop below 0.995 of the unperturbed pair") {
  const auto t0 = std::chrono::steady_clock::now();
  const VerifyReport rep = verify_witness(fields(), {100, 1000, 10000}, 2048, 512);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("verification took " << secs << " s");
  CHECK(rep.base_max == doctest::Approx(1).epsilon(1e-6));
  for (const VerifyRow& r : rep.rows) {
    INFO("N " << r.N << " ratio_max " << r.ratio_max << " ratio_min " << r.ratio_min << " residual "
              << r.residual << " maxR " << r.maxR);
    CHECK(r.maxR <= 0.99);
    if (r.N >= 1000) {
      CHECK(r.ratio_max <= 0.995);
      CHECK(r.ratio_min <= 0.995);
    }
  }
  CHECK(rep.residual_spread <= 2);
  CHECK(rep.pass());
  CHECK_THROWS_AS(verify_witness(fields(), {1000}, 1024, 512), PreconditionError);
}

TEST_CASE("cutoff identities") {
  const WitnessFields& f = fields();
  const CutoffReport r = cutoff_witness(f, 1.0, 256);
  CHECK(r.bracket_residual <= 1e-9);
  CHECK(r.double_residual <= 1e-9);
  CHECK(r.pass);
  CHECK_THROWS_AS(cutoff_witness(f, -0.5, 256), PreconditionError);

  const auto torus = pbr::field::Domain2::torus(32);
  const JetField one = pbr::field::constant(torus, 1.0);
  const JetField F = pbr::field::sin(pbr::field::coord_p(torus)), G = pbr::field::cos(pbr::field::coord_q(torus));
  const CutoffReport t = cutoff_identity_report(one, F, G);
  CHECK(t.bracket_residual == 0);
  CHECK(t.double_residual == 0);
}
