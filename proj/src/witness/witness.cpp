#include "pbr/witness/witness.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "pbr/errors.hpp"
#include "pbr/field/jet.hpp"
#include "pbr/witness/lemma.hpp"

namespace pbr::witness {

using field::Jet;

void WitnessConfig::validate() const {
  auto fail = [](const std::string& what) { throw PreconditionError("witness config: " + what); };
  if (!(delta > 0)) fail("delta must be positive");
  if (!(kappa >= 0)) fail("kappa must be non-negative (0 selects the computed value)");
  for (int N : N_list)
    if (N < 1) fail("every N must be >= 1");
  if (grid_n < 16 || coarse_n < 16) fail("grid resolutions must be >= 16");
  if (!(w_ramp > 0) || !(w_tail > 2 * w_ramp)) fail("w tail must exceed twice its ramp");
  if (!(a_ramp > 0) || !(a_taper > 2 * a_ramp)) fail("a taper must exceed twice its ramp");
  if (!(c1 - std::max(w_tail, a_taper) > 0)) fail("construction must live in q > 0 (c1 larger than the tails)");
  if (!(w0 >= 1 && w0 < 2)) fail("w0 must lie in [1, 2)");
  if (w0 / (w_tail - w_ramp) > 0.01) fail("w tail too short: |w'| would exceed 0.01");
  if (a0 / (a_taper - a_ramp) > 0.03) fail("a taper too short: |a'| would exceed 0.03");
  if (!(edge_slope > 0 && edge_slope <= 0.01)) fail("edge slope must lie in (0, 0.01]");
  if (!(spike_ramp > 0 && spike_plateau > 0)) fail("spike ramp and plateau must be positive");
  if (delta / 6 <= spike_ramp + spike_plateau / 2) fail("delta too small for the w' wiggle");
}

namespace {

// u' rises to 1, stays, falls to -1, stays, returns: max |u'| = 1, u compact.
PiecewisePoly make_u_prime() {
  return PiecewisePoly::level_spline({{0, 0}, {0.5, 1}, {1, 1}, {2, -1}, {2.5, -1}, {3, 0}});
}

// w' as a level spline; `plateau` is the length of the negative plateau of w.
PiecewisePoly make_w_prime(const WitnessConfig& c, double plateau) {
  const double s = c.w0 / (c.w_tail - c.w_ramp);  // tail slope
  const double r = c.w_ramp;
  const double b = c.spike_ramp, h = c.spike_plateau / 2, e = c.edge_slope;
  const double s1 = c.c2() + c.delta / 3, s2 = c.c2() + 2 * c.delta / 3;
  const double L0 = c.c1 - c.w_tail;
  // descent from w0 to -w0 at slope s
  const double drop = 2 * c.w0 / s + r;
  const double d0 = c.c4(), d1 = d0 + drop, d2 = d1 + plateau;
  std::vector<std::pair<double, double>> k{
      {L0, 0}, {L0 + r, s}, {c.c1 - r, s}, {c.c1, 0},
      {c.c2(), e}, {s1 - h - b, e}, {s1 - h, 1}, {s1 + h, 1}, {s1 + h + b, 0},
      {s2 - h - b, 0}, {s2 - h, -1}, {s2 + h, -1}, {s2 + h + b, -e}, {c.c3(), -e},
      {c.c4(), 0}, {d0 + r, -s}, {d1 - r, -s}, {d1, 0}};
  if (plateau > 0) k.emplace_back(d2, 0);
  k.insert(k.end(), {{d2 + r, s}, {d2 + c.w_tail - r, s}, {d2 + c.w_tail, 0}});
  return PiecewisePoly::level_spline(k);
}

Derivs log_derivs(double x) { return {std::log(x), 1 / x, -1 / (x * x), 2 / (x * x * x), -6 / (x * x * x * x)}; }

}  // namespace

WitnessFields build_witness(const WitnessConfig& cfg) {
  cfg.validate();
  WitnessFields f;
  f.cfg_ = cfg;
  f.kappa_ = cfg.kappa > 0 ? cfg.kappa : kappa_search(cfg.gamma, cfg.r_bound, cfg.a0);

  f.u_prime_ = make_u_prime();
  f.u_ = f.u_prime_.antiderivative();

  // With no plateau the descent and the final rise cancel, leaving the
  // positive area near [c1, c4]; the plateau at -w0 absorbs it.
  const double excess = make_w_prime(cfg, 0).antiderivative().integral();
  if (!(excess > 0)) throw PreconditionError("witness: w has no positive excess to balance");
  f.plateau_ = excess / cfg.w0;
  f.w_prime_ = make_w_prime(cfg, f.plateau_);
  f.w_ = f.w_prime_.antiderivative();
  f.v_ = f.w_.antiderivative();

  const double sa = cfg.a0 / (cfg.a_taper - cfg.a_ramp);
  const double ra = cfg.a_ramp;
  f.a_left_ = PiecewisePoly::level_spline({{cfg.c1 - cfg.a_taper, 0},
                                           {cfg.c1 - cfg.a_taper + ra, sa},
                                           {cfg.c1 - ra, sa},
                                           {cfg.c1, 0}})
                  .antiderivative();
  f.a_right_ = PiecewisePoly::level_spline({{cfg.c4(), 0},
                                            {cfg.c4() + ra, -sa},
                                            {cfg.c4() + cfg.a_taper - ra, -sa},
                                            {cfg.c4() + cfg.a_taper, 0}})
                   .antiderivative(cfg.a0);

  // a must stay within kappa of a0 on [c1, c4]; w >= w0 there keeps a <= a0.
  double wmax = 0;
  const int m = 20000;
  for (int k = 0; k <= m; ++k) wmax = std::max(wmax, f.w_(cfg.c1 + 3 * cfg.delta * k / m));
  const double excursion = cfg.gamma * std::log(wmax / cfg.w0);
  if (excursion >= f.kappa_) {
    throw PreconditionError("witness: a leaves [a0 - kappa, a0 + kappa] on [c1, c4] (excursion " +
                            std::to_string(excursion) + ", kappa " + std::to_string(f.kappa_) +
                            "); take delta smaller");
  }
  return f;
}

Derivs WitnessFields::a(double q) const {
  if (q < cfg_.c1) return a_left_.derivs(q);
  if (q > cfg_.c4()) return a_right_.derivs(q);
  // a = a0 - gamma log(w / w0), so a' = -gamma w' / w exactly
  const Jet wq = compose(w_.derivs(q), Jet::variable_p(q));
  const Jet lw = compose(log_derivs(wq.value()), wq);
  Derivs out;
  for (int k = 0; k <= Jet::kMaxOrder; ++k) out[k] = -cfg_.gamma * lw.derivative(k, 0);
  out[0] = cfg_.a0 - cfg_.gamma * (std::log(wq.value()) - std::log(cfg_.w0));
  return out;
}

double WitnessFields::a_sup() const {
  double m = cfg_.a0;
  const int k = 20000;
  for (int i = 0; i <= k; ++i) m = std::max(m, std::abs(a(cfg_.c1 + 3 * cfg_.delta * i / k)[0]));
  return m;
}

JetField WitnessFields::F(const Domain2& d) const {
  const auto self = std::make_shared<const WitnessFields>(*this);
  return field::of_p(d, [self](double p) { return self->u(p); });
}

JetField WitnessFields::G(const Domain2& d) const {
  const auto self = std::make_shared<const WitnessFields>(*this);
  return -field::of_q(d, [self](double q) { return self->v(q); });
}

JetField WitnessFields::F_N(const Domain2& d, int N) const {
  if (N < 1) throw PreconditionError("F_N needs N >= 1");
  const double n = N;
  const auto self = std::make_shared<const WitnessFields>(*this);
  return JetField(d, [self, n](double p, double q, int k) {
    const Jet up = compose(self->u(p), Jet::variable_p(p, k));
    const Jet aq = compose(self->a(q), Jet::variable_q(q, k));
    return up + (1 / n) * (aq * compose(field::sin_derivs(n * up.value()), n * up));
  });
}

double WitnessFields::R(double p, double q, int N) const {
  const double c = std::cos(N * u_(p));
  const Derivs ad = a(q);
  const Derivs wd = w_.derivs(q);
  const double t = ad[0] * c + 1;
  return wd[1] * t * t + ad[1] * wd[0] * (ad[0] + c);
}

double WitnessFields::u2R(double p, double q, int N) const {
  const double du = u_prime_(p);
  return du * du * R(p, q, N);
}

namespace {

nlohmann::json poly_json(const PiecewisePoly& p) {
  return {{"knots", p.knots()}, {"pieces", p.pieces()}, {"left", p.left_value()}, {"right", p.right_value()}};
}

}  // namespace

nlohmann::json WitnessFields::to_json() const {
  const WitnessConfig& c = cfg_;
  return {{"config",
           {{"delta", c.delta},
            {"c", {c.c1, c.c2(), c.c3(), c.c4()}},
            {"kappa", kappa_},
            {"w0", c.w0},
            {"a0", c.a0},
            {"gamma", c.gamma},
            {"w_tail", c.w_tail},
            {"w_ramp", c.w_ramp},
            {"a_taper", c.a_taper},
            {"a_ramp", c.a_ramp},
            {"spike_ramp", c.spike_ramp},
            {"spike_plateau", c.spike_plateau},
            {"edge_slope", c.edge_slope}}},
          {"w_negative_plateau", plateau_},
          {"u_prime", poly_json(u_prime_)},
          {"w_prime", poly_json(w_prime_)},
          {"a_left_taper", poly_json(a_left_)},
          {"a_right_taper", poly_json(a_right_)},
          {"a_core", "a0 - gamma * log(w / w0) on [c1, c4]"},
          {"smoothstep", field::smoothstep9()}};
}

}  // namespace pbr::witness
