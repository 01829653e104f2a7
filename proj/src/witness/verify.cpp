#include "pbr/witness/verify.hpp"

#include <algorithm>
#include <cmath>

#include "pbr/errors.hpp"
#include "pbr/field/bracket.hpp"
#include "pbr/field/grid.hpp"
#include "pbr/witness/lemma.hpp"

namespace pbr::witness {

using field::Jet;

std::vector<Domain2> verification_patches(const WitnessFields& f, int n, int coarse_n) {
  const WitnessConfig& c = f.config();
  const double p0 = f.p_support_begin(), p1 = f.p_support_end();
  return {Domain2::rectangle(n, p0, p1, c.c1, c.c4(), 0),
          Domain2::rectangle(coarse_n, p0, p1, f.q_support_begin(), f.q_support_end(), 0)};
}

JetField r_field(const WitnessFields& f, const Domain2& d, int N) {
  const auto self = std::make_shared<const WitnessFields>(f);
  return JetField(
      d, [self, N](double p, double q, int k) { return Jet::constant(self->R(p, q, N), k); },
      field::Provenance::analytic, 0);
}

namespace {

// Per-column partials combined in column order: deterministic for any
// thread count.
struct Accum {
  double max = -INFINITY, min = INFINITY, abs_max = 0;
  int i_abs = 0, j_abs = 0;
  void add(double x, int i, int j) {
    max = std::max(max, x);
    min = std::min(min, x);
    if (std::abs(x) > abs_max) {
      abs_max = std::abs(x);
      i_abs = i;
      j_abs = j;
    }
  }
  void merge(const Accum& o) {
    max = std::max(max, o.max);
    min = std::min(min, o.min);
    if (o.abs_max > abs_max) {
      abs_max = o.abs_max;
      i_abs = o.i_abs;
      j_abs = o.j_abs;
    }
  }
};

template <typename Fn>
Accum sweep(const Domain2& d, Fn fn) {
  std::vector<Accum> cols(static_cast<std::size_t>(d.n));
  field::parallel_for(d.n, [&](int j) {
    Accum a;
    const double q = d.q(j);
    for (int i = 0; i < d.n; ++i) a.add(fn(d.p(i), q), i, j);
    cols[static_cast<std::size_t>(j)] = a;
  });
  Accum total;
  for (const Accum& a : cols) total.merge(a);
  return total;
}

double case2_envelope(const WitnessFields& f) {
  const WitnessConfig& c = f.config();
  double m = 0;
  auto at = [&](double q) {
    const Derivs w = f.w(q), a = f.a(q);
    const double A = std::abs(a[0]) + 1;
    m = std::max(m, std::abs(w[1]) * A * A + std::abs(a[1]) * std::abs(w[0]) * A);
  };
  const double step = 1e-3;
  for (double q = f.q_support_begin(); q < c.c1; q += step) at(q);
  for (double q = c.c4(); q <= f.q_support_end(); q += step) at(std::nextafter(q, INFINITY));
  return m;
}

}  // namespace

RBoundReport r_bound_check(const WitnessFields& f, int N, int n, int coarse_n) {
  RBoundReport r;
  r.N = N;
  for (const Domain2& d : verification_patches(f, n, coarse_n)) {
    const Accum a = sweep(d, [&](double p, double q) { return f.R(p, q, N); });
    if (a.abs_max > r.max_abs_R) {
      r.max_abs_R = a.abs_max;
      r.p_at = d.p(a.i_abs);
      r.q_at = d.q(a.j_abs);
    }
  }
  r.case2_envelope = case2_envelope(f);
  r.pass = r.max_abs_R <= f.config().r_bound && r.case2_envelope <= 0.36;
  return r;
}

VerifyReport verify_witness(const WitnessFields& f, const std::vector<int>& N_list, int n, int coarse_n) {
  if (n < 2048) throw PreconditionError("witness verification needs a fine grid with n >= 2048");
  if (N_list.empty()) throw PreconditionError("witness verification needs at least one N");
  const auto patches = verification_patches(f, n, coarse_n);
  VerifyReport rep;
  rep.base_max = -INFINITY;
  rep.base_min = INFINITY;
  for (const Domain2& d : patches) {
    const JetField F = f.F(d), G = f.G(d);
    const JetField X = field::poisson(field::poisson(F, G), F);
    const Accum a = sweep(d, [&](double p, double q) { return X.jet(p, q, 0).value(); });
    rep.base_max = std::max(rep.base_max, a.max);
    rep.base_min = std::min(rep.base_min, a.min);
  }
  for (int N : N_list) {
    VerifyRow row;
    row.N = N;
    double dmax = -INFINITY, dmin = INFINITY;
    for (const Domain2& d : patches) {
      const JetField FN = f.F_N(d, N), G = f.G(d);
      const JetField X = field::poisson(field::poisson(FN, G), FN);
      const Accum db = sweep(d, [&](double p, double q) { return X.jet(p, q, 0).value(); });
      const Accum res =
          sweep(d, [&](double p, double q) { return X.jet(p, q, 0).value() - f.u2R(p, q, N); });
      const Accum R = sweep(d, [&](double p, double q) { return f.R(p, q, N); });
      dmax = std::max(dmax, db.max);
      dmin = std::min(dmin, db.min);
      row.residual = std::max(row.residual, res.abs_max);
      row.maxR = std::max(row.maxR, R.abs_max);
    }
    row.ratio_max = dmax / rep.base_max;
    row.ratio_min = dmin / rep.base_min;
    rep.rows.push_back(row);
  }
  rep.maxR_ok = rep.ratios_ok = true;
  double lo = INFINITY, hi = 0;
  for (const VerifyRow& row : rep.rows) {
    rep.maxR_ok = rep.maxR_ok && row.maxR <= f.config().r_bound;
    if (row.N >= 1000) rep.ratios_ok = rep.ratios_ok && row.ratio_max <= 0.995 && row.ratio_min <= 0.995;
    lo = std::min(lo, row.residual * row.N);
    hi = std::max(hi, row.residual * row.N);
  }
  rep.residual_spread = lo > 0 ? hi / lo : INFINITY;
  rep.residual_ok = rep.rows.size() < 2 || rep.residual_spread <= 2;
  return rep;
}

CutoffReport cutoff_identity_report(const JetField& phi, const JetField& F, const JetField& G, double tol) {
  using field::poisson;
  const JetField phiF = phi * F, phiG = phi * G;
  const JetField d1 = poisson(phiF, phiG) - phi * phi * poisson(F, G);
  const JetField cut = poisson(poisson(phiF, phiG), phiF);
  const JetField uncut = poisson(poisson(F, G), F);
  const Domain2& d = phi.domain();
  CutoffReport r;
  r.bracket_residual = sweep(d, [&](double p, double q) { return d1.jet(p, q, 0).value(); }).abs_max;
  const Accum diff = sweep(d, [&](double p, double q) { return cut.jet(p, q, 0).value() - uncut.jet(p, q, 0).value(); });
  r.double_residual = diff.abs_max;
  r.max_cut = sweep(d, [&](double p, double q) { return cut.jet(p, q, 0).value(); }).max;
  r.max_uncut = sweep(d, [&](double p, double q) { return uncut.jet(p, q, 0).value(); }).max;
  r.pass = r.bracket_residual <= tol && r.double_residual <= tol && std::abs(r.max_cut - r.max_uncut) <= tol;
  return r;
}

CutoffReport cutoff_witness(const WitnessFields& f, double p_lo, double p_hi, double q_lo, double q_hi, int n) {
  if (p_lo > f.p_support_begin() || p_hi < f.p_support_end() || q_lo > f.q_support_begin() ||
      q_hi < f.q_support_end()) {
    throw PreconditionError("cutoff plateau does not cover the supports of F and G");
  }
  const double rp = 1.0, rq = 5.0;
  const PiecewisePoly phi_p = PiecewisePoly::level_spline({{p_lo - rp, 0}, {p_lo, 1}, {p_hi, 1}, {p_hi + rp, 0}});
  const PiecewisePoly phi_q = PiecewisePoly::level_spline({{q_lo - rq, 0}, {q_lo, 1}, {q_hi, 1}, {q_hi + rq, 0}});
  const Domain2 d = Domain2::rectangle(n, p_lo - 2 * rp, p_hi + 2 * rp, q_lo - 2 * rq, q_hi + 2 * rq);
  const JetField phi = field::of_p(d, [phi_p](double p) { return phi_p.derivs(p); }) *
                       field::of_q(d, [phi_q](double q) { return phi_q.derivs(q); });
  return cutoff_identity_report(phi, f.F(d), f.G(d));
}

CutoffReport cutoff_witness(const WitnessFields& f, double margin, int n) {
  return cutoff_witness(f, f.p_support_begin() - margin, f.p_support_end() + margin, f.q_support_begin() - margin,
                        f.q_support_end() + margin, n);
}


namespace {

// Max over knots of the jump in derivatives 0..4 (the spline's own order
// plus the orders passed on), relative to the size of the neighbouring terms.
double knot_jump(const PiecewisePoly& f) {
  double worst = 0;
  const auto& knots = f.knots();
  const auto& pieces = f.pieces();
  for (std::size_t k = 1; k + 1 < knots.size(); ++k) {
    const std::vector<double>& c = pieces[k - 1];
    const double L = knots[k] - knots[k - 1];
    const Derivs right = f.derivs(knots[k]);
    for (int d = 0; d <= 4; ++d) {
      double val = 0, scale = 0, fall = 1;
      for (std::size_t j = static_cast<std::size_t>(d); j < c.size(); ++j) {
        fall = 1;
        for (int m = 0; m < d; ++m) fall *= static_cast<double>(j) - m;
        const double term = c[j] * fall * std::pow(L, static_cast<double>(j) - d);
        val += term;
        scale += std::abs(term);
      }
      worst = std::max(worst, std::abs(val - right[static_cast<std::size_t>(d)]) / std::max(1.0, scale));
    }
  }
  return worst;
}

}  // namespace

std::vector<InvariantCheck> check_invariants(const WitnessFields& f) {
  const WitnessConfig& c = f.config();
  std::vector<InvariantCheck> out;
  auto add = [&](std::string name, double value, double bound, bool pass) {
    out.push_back({std::move(name), value, bound, pass});
  };

  // 1-D grids: the core [c1, c4] at delta / 2000, the rest at delta / 200.
  const double core_h = c.delta / 2000, tail_h = c.delta / 200;
  std::vector<double> core, outside, outside_c23;
  for (double q = c.c1; q <= c.c4(); q += core_h) core.push_back(q);
  core.push_back(c.c4());
  const double q_lo = std::min(f.q_support_begin(), c.c1 - c.a_taper) - 1;
  const double q_hi = std::max(f.q_support_end(), c.c4() + c.a_taper) + 1;
  for (double q = q_lo; q < c.c1; q += tail_h) outside.push_back(q);
  for (double q = c.c4() + tail_h; q <= q_hi; q += tail_h) outside.push_back(q);
  outside_c23 = outside;
  for (double q : core)
    if (q <= c.c2() || q >= c.c3()) outside_c23.push_back(q);

  double up_max = 0;
  for (double p = f.p_support_begin(); p <= f.p_support_end(); p += 1e-5)
    up_max = std::max(up_max, std::abs(f.u(p)[1]));
  add("max |u'| = 1", up_max, 1, std::abs(up_max - 1) <= 1e-12);

  double wp_max = -INFINITY, wp_min = INFINITY, w_lo = INFINITY, w_hi = -INFINITY, a_dev = 0, ode = 0;
  // a against a0 - gamma * integral of w'/w, accumulated by 5-point
  // Gauss-Legendre over each core cell
  static constexpr double gx[5] = {0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                   0.9061798459386640};
  static constexpr double gw[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                   0.2369268850561891, 0.2369268850561891};
  double acc = c.a0;
  for (std::size_t k = 0; k + 1 < core.size(); ++k) {
    const double m = (core[k] + core[k + 1]) / 2, h = (core[k + 1] - core[k]) / 2;
    for (int g = 0; g < 5; ++g) {
      const Derivs w = f.w(m + h * gx[g]);
      acc -= c.gamma * h * gw[g] * w[1] / w[0];
    }
    ode = std::max(ode, std::abs(f.a(core[k + 1])[0] - acc));
  }
  for (double q : core) {
    const Derivs w = f.w(q), a = f.a(q);
    if (q >= c.c2() && q <= c.c3()) {
      wp_max = std::max(wp_max, w[1]);
      wp_min = std::min(wp_min, w[1]);
    }
    w_lo = std::min(w_lo, w[0]);
    w_hi = std::max(w_hi, w[0]);
    a_dev = std::max(a_dev, std::abs(a[0] - c.a0));
  }
  add("a(c1) = a0", std::abs(f.a(c.c1)[0] - c.a0), 1e-12, std::abs(f.a(c.c1)[0] - c.a0) <= 1e-12);
  add("a = a0 - gamma * integral of w'/w on [c1,c4]", ode, 1e-10, ode <= 1e-10);
  add("|a - a0| <= kappa on [c1,c4]", a_dev, f.kappa(), a_dev <= f.kappa());
  add("max w' on [c2,c3] = 1", wp_max, 1, std::abs(wp_max - 1) <= 1e-12);
  add("min w' on [c2,c3] = -1", wp_min, -1, std::abs(wp_min + 1) <= 1e-12);
  add("w'(c2) = 0.001", f.w(c.c2())[1], 0.001, std::abs(f.w(c.c2())[1] - 0.001) <= 1e-12);
  add("w'(c3) = -0.001", f.w(c.c3())[1], -0.001, std::abs(f.w(c.c3())[1] + 0.001) <= 1e-12);
  add("min w on [c1,c4] >= 1", w_lo, 1, w_lo >= 1);
  add("max w on [c1,c4] <= 2", w_hi, 2, w_hi <= 2);

  double wp_out = 0, w_out = 0, ap_out = 0, a_out = 0;
  for (double q : outside_c23) wp_out = std::max(wp_out, std::abs(f.w(q)[1]));
  for (double q : outside) {
    w_out = std::max(w_out, std::abs(f.w(q)[0]));
    const Derivs a = f.a(q);
    ap_out = std::max(ap_out, std::abs(a[1]));
    a_out = std::max(a_out, std::abs(a[0]));
  }
  add("|w'| <= 0.01 off [c2,c3]", wp_out, 0.01, wp_out <= 0.01);
  add("|w| <= 3 off [c1,c4]", w_out, 3, w_out <= 3);
  add("|a'| <= 0.03 off [c1,c4]", ap_out, 0.03, ap_out <= 0.03);
  add("|a| <= 2 off [c1,c4]", a_out, 2, a_out <= 2);

  const double wint = f.v_poly().right_value();
  add("integral of w = 0", std::abs(wint), 1e-10, std::abs(wint) <= 1e-10);
  const double tails = std::max({std::abs(f.w_poly().right_value()), std::abs(f.u_poly().right_value()),
                                 std::abs(f.a(q_hi)[0]), std::abs(f.a(q_lo)[0])});
  add("u, w, a vanish outside their supports", tails, 1e-12, tails <= 1e-12);

  const double jump = std::max({knot_jump(f.u_poly()), knot_jump(f.u_prime_poly()), knot_jump(f.w_poly()),
                                knot_jump(f.w_prime_poly()), knot_jump(f.v_poly())});
  add("C4 matching at spline knots", jump, 1e-9, jump <= 1e-9);

  double a_jump = 0;
  for (double x : {c.c1 - c.a_taper, c.c1, c.c4(), c.c4() + c.a_taper}) {
    const Derivs l = f.a(std::nextafter(x, -INFINITY)), r = f.a(x);
    for (int k = 0; k <= 4; ++k) a_jump = std::max(a_jump, std::abs(l[k] - r[k]));
  }
  add("a is C4 across the taper joins", a_jump, 1e-9, a_jump <= 1e-9);

  const double lemma = r_sweep_max(c.gamma, c.a0, f.kappa(), 1e-4);
  add("|r| < r_bound on the kappa rectangle", lemma, c.r_bound, lemma < c.r_bound);
  return out;
}

}  // namespace pbr::witness
