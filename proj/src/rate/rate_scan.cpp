#include "pbr/rate/rate_scan.hpp"

#include <gsl/gsl_fit.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "pbr/errors.hpp"
#include "pbr/field/bracket.hpp"
#include "pbr/field/functionals.hpp"
#include "pbr/field/grid.hpp"
#include "pbr/field/trig.hpp"

namespace pbr::rate {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

// Minimizes f over R^dim with GSL's simplex until `max_iter` iterations or
// `keep_going` turns false.  Returns the best point seen.
template <typename Fn, typename Stop>
std::vector<double> simplex_minimize(Fn& f, std::vector<double> x0, const std::vector<double>& step, int max_iter,
                                     double size_tol, Stop keep_going) {
  const std::size_t dim = x0.size();
  struct Ctx {
    Fn* f;
  } ctx{&f};
  gsl_multimin_function fn;
  fn.n = dim;
  fn.params = &ctx;
  fn.f = [](const gsl_vector* v, void* p) {
    std::vector<double> x(v->size);
    for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
    return (*static_cast<Ctx*>(p)->f)(x);
  };
  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* ss = gsl_vector_alloc(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    gsl_vector_set(x, i, x0[i]);
    gsl_vector_set(ss, i, step[i]);
  }
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_multimin_fminimizer_set(s, &fn, x, ss);
  for (int it = 0; it < max_iter && keep_going(); ++it) {
    if (gsl_multimin_fminimizer_iterate(s)) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), size_tol) == GSL_SUCCESS) break;
  }
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = gsl_vector_get(s->x, i);
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  return out;
}

struct Grid {
  bool periodic;
  double p0, p1, q0, q1, hp, hq;
  int n;
  double p(int i) const { return p0 + i * hp; }
  double q(int j) const { return q0 + j * hq; }
};

Grid grid_of(const field::Domain2& d, int n) {
  if (n < 16) throw PreconditionError("phi_value needs n >= 16");
  Grid g{d.periodic(), d.p0, d.p1, d.q0, d.q1, 0, 0, n};
  if (g.periodic) {
    g.p0 = g.q0 = 0;
    g.p1 = g.q1 = 2 * kPi;
    g.hp = g.hq = 2 * kPi / n;
  } else {
    g.hp = (d.p1 - d.p0) / (n - 1);
    g.hq = (d.q1 - d.q0) / (n - 1);
  }
  return g;
}

// Grid maximum of X, then the best node maxima polished by a simplex search.
double refined_max(const JetField& X, const Grid& g, int top) {
  const int n = g.n;
  Eigen::ArrayXXd v(n, n);
  field::parallel_for(n, [&](int j) {
    for (int i = 0; i < n; ++i) v(i, j) = X.jet(g.p(i), g.q(j), 0).value();
  });
  double best = v.maxCoeff();
  if (top <= 0) return best;

  struct Node {
    double value;
    int i, j;
  };
  std::vector<Node> peaks;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      bool peak = true;
      for (int dj = -1; dj <= 1 && peak; ++dj) {
        for (int di = -1; di <= 1 && peak; ++di) {
          if (!di && !dj) continue;
          int a = i + di, b = j + dj;
          if (g.periodic) {
            a = (a + n) % n;
            b = (b + n) % n;
          } else if (a < 0 || b < 0 || a >= n || b >= n) {
            continue;
          }
          if (v(a, b) > v(i, j)) peak = false;
        }
      }
      if (peak) peaks.push_back({v(i, j), i, j});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const Node& a, const Node& b) { return a.value > b.value; });
  if (static_cast<int>(peaks.size()) > top) peaks.resize(static_cast<std::size_t>(top));

  for (const Node& nd : peaks) {
    auto neg = [&](const std::vector<double>& x) {
      double p = x[0], q = x[1];
      if (!g.periodic) {
        p = std::clamp(p, g.p0, g.p1);
        q = std::clamp(q, g.q0, g.q1);
      }
      const double val = X.jet(p, q, 0).value();
      best = std::max(best, val);
      return -val;
    };
    simplex_minimize(neg, {g.p(nd.i), g.q(nd.j)}, {g.hp / 2, g.hq / 2}, 60, 1e-9 * g.hp, [] { return true; });
  }
  return best;
}

std::vector<field::TrigTerm> unit_trig(std::uint64_t seed) {
  auto terms = field::random_trig_terms(seed, 6, 3);
  double l1 = 0;
  for (const auto& t : terms) l1 += std::abs(t.a) + std::abs(t.b);
  for (auto& t : terms) {
    t.a /= l1;
    t.b /= l1;
  }
  return terms;
}

// Seed of member k, independent of evaluation order.
std::uint64_t member_seed(std::uint64_t master, std::uint64_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  std::mt19937_64 gen(seq);
  return gen();
}

std::vector<Member> coarse_members(FamilyKind kind, double eps, std::uint64_t seed, int budget) {
  std::vector<Member> out;
  const std::vector<double> lambdas{std::pow(eps, -1.0 / 3), std::pow(eps, -0.25), std::pow(eps, -0.5)};
  const std::vector<double> phases{kPi, 0, kPi / 2, 3 * kPi / 2};
  switch (kind) {
    case FamilyKind::oscillatory:
      for (double l : lambdas)
        for (double a : phases)
          for (double b : phases) out.push_back({kind, {std::log(l), a, b, 1}, 0, eps});
      break;
    case FamilyKind::modulated:
      for (double l : lambdas)
        for (double a : phases)
          for (double mu : {0.0, 1.0})
            for (double b : {0.0, kPi / 2}) out.push_back({kind, {std::log(l), a, mu, b, 1}, 0, eps});
      break;
    case FamilyKind::random_fourier:
      for (int k = 0; k < budget; ++k)
        out.push_back({kind, {1}, member_seed(seed, static_cast<std::uint64_t>(k)), eps});
      break;
  }
  return out;
}

}  // namespace

std::string family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::oscillatory:
      return "oscillatory";
    case FamilyKind::modulated:
      return "modulated";
    case FamilyKind::random_fourier:
      return "random-fourier";
  }
  return "?";
}

std::string phi_name(PhiKind k) { return k == PhiKind::max_bracket ? "maxFG" : "double"; }

std::string Member::params() const {
  if (x.empty()) return "identity";
  const double t = clamp01(x.back());
  switch (kind) {
    case FamilyKind::oscillatory:
      return "lambda=" + fmt(std::exp(x[0])) + ";phiF=" + fmt(x[1]) + ";phiG=" + fmt(x[2]) + ";t=" + fmt(t);
    case FamilyKind::modulated:
      return "lambda=" + fmt(std::exp(x[0])) + ";phi0=" + fmt(x[1]) + ";mu=" + fmt(x[2]) + ";phi1=" + fmt(x[3]) +
             ";t=" + fmt(t);
    case FamilyKind::random_fourier:
      return "seed=" + std::to_string(seed) + ";t=" + fmt(t);
  }
  return "";
}

Member Member::at_radius(double new_eps) const {
  Member m = *this;
  if (new_eps > 0 && !m.x.empty()) m.x.back() = clamp01(m.x.back()) * eps / new_eps;
  m.eps = new_eps;
  return m;
}

Perturbed perturb(const JetField& F, const JetField& G, const Member& m) {
  field::require_same_domain(F, G);
  const field::Domain2& d = F.domain();
  const double amp = clamp01(m.x.empty() ? 0 : m.x.back()) * m.eps;
  if (amp == 0) return {F, G};
  switch (m.kind) {
    case FamilyKind::oscillatory: {
      const double l = std::exp(m.x[0]);
      return {F + amp * field::sin(l * F + field::constant(d, m.x[1])),
              G + amp * field::sin(l * G + field::constant(d, m.x[2]))};
    }
    case FamilyKind::modulated: {
      const double l = std::exp(m.x[0]);
      const JetField mod = field::cos(m.x[2] * field::coord_q(d) + field::constant(d, m.x[3]));
      return {F + amp * (mod * field::sin(l * F + field::constant(d, m.x[1]))), G};
    }
    case FamilyKind::random_fourier:
      return {F + amp * field::trig_field(d, unit_trig(m.seed)),
              G + amp * field::trig_field(d, unit_trig(m.seed ^ 0x9E3779B97F4A7C15ULL))};
  }
  throw std::logic_error("unreachable");
}

double phi_value(const JetField& F, const JetField& G, PhiKind kind, const PhiOptions& opt) {
  const Grid g = grid_of(F.domain(), opt.n);
  const JetField B = field::poisson(F, G);
  if (kind == PhiKind::max_bracket) return refined_max(B, g, opt.refine_top);
  return refined_max(field::poisson(B, F), g, opt.refine_top) + refined_max(field::poisson(B, G), g, opt.refine_top);
}

SearchResult phi_bar_upper(const JetField& F, const JetField& G, double eps, PhiKind kind, FamilyKind family,
                           const SearchOptions& opt, const std::optional<Member>& warm) {
  if (!(eps >= 0)) throw PreconditionError("phi_bar_upper needs eps >= 0");
  if (opt.budget < 1) throw PreconditionError("phi_bar_upper needs a budget of at least one evaluation");
  if (!F.analytic() || !G.analytic()) throw PreconditionError("phi_bar_upper needs analytic fields");

  SearchResult res;
  res.baseline = phi_value(F, G, kind, opt.final);
  res.best = res.baseline;
  res.member = {family, {}, 0, eps};
  res.warning = true;
  if (eps == 0) return res;

  auto score = [&](const Member& m) {
    ++res.evaluations;
    const Perturbed P = perturb(F, G, m);
    return phi_value(P.F, P.G, kind, opt.search);
  };

  std::vector<Member> queue;
  if (warm) queue.push_back(warm->at_radius(eps));
  for (Member& m : coarse_members(family, eps, opt.seed, opt.budget)) queue.push_back(std::move(m));

  Member best_member;
  double best_score = INFINITY;
  for (const Member& m : queue) {
    if (res.evaluations >= opt.budget) break;
    const double s = score(m);
    if (s < best_score) {
      best_score = s;
      best_member = m;
    }
  }

  if (family != FamilyKind::random_fourier && res.evaluations < opt.budget) {
    auto objective = [&](const std::vector<double>& x) {
      Member m = best_member;
      m.x = x;
      const double s = score(m);
      if (s < best_score) {
        best_score = s;
        best_member = m;
      }
      return s;
    };
    std::vector<double> step(best_member.x.size(), 0.5);
    step[0] = 0.3;
    step.back() = 0.2;
    simplex_minimize(objective, best_member.x, step, 1000, 1e-6, [&] { return res.evaluations < opt.budget; });
  }

  std::vector<Member> finalists{best_member};
  if (warm) finalists.push_back(warm->at_radius(eps));
  for (const Member& m : finalists) {
    const Perturbed P = perturb(F, G, m);
    const double v = phi_value(P.F, P.G, kind, opt.final);
    if (v < res.best) {
      res.best = v;
      res.member = m;
      res.warning = false;
    }
  }
  return res;
}

ExponentFit exponent_fit(const std::vector<double>& eps, const std::vector<double>& d) {
  if (eps.size() != d.size()) throw PreconditionError("exponent_fit: eps and d differ in length");
  ExponentFit fit;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(d[i] > 0) || !(eps[i] > 0)) {
      ++fit.dropped;
      fit.warnings.push_back("dropped point eps=" + fmt(eps[i]) + " with d=" + fmt(d[i]));
      continue;
    }
    x.push_back(std::log(eps[i]));
    y.push_back(std::log(d[i]));
  }
  fit.used = static_cast<int>(x.size());
  if (fit.used < 3) throw PreconditionError("exponent_fit needs at least 3 points with d > 0");
  double c0, c1, cov00, cov01, cov11, sumsq;
  gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
  fit.C = std::exp(c0);
  fit.exponent = c1;
  fit.residual = std::sqrt(sumsq / static_cast<double>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - c0 - c1 * x[i]));
  return fit;
}

bool RateScanReport::pass() const {
  if (which == PhiKind::max_bracket) return strict_decreases && exponent_ok && two_thirds_ok;
  return one_third_ok;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > lo) || n < 2) throw PreconditionError("log_grid needs 0 < lo < hi and n >= 2");
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (n - 1)));
  g.front() = lo;
  g.back() = hi;
  return g;
}

RateScanReport rate_report(const JetField& F, const JetField& G, std::vector<double> eps_grid, PhiKind which,
                           const RateOptions& opt) {
  if (!F.analytic() || !G.analytic()) throw PreconditionError("rate_report needs analytic fields");
  if (eps_grid.size() < 3) throw PreconditionError("rate_report needs at least 3 radii");
  std::sort(eps_grid.begin(), eps_grid.end());
  if (!(eps_grid.front() > 0)) throw PreconditionError("rate_report radii must be positive");
  if (eps_grid.back() / eps_grid.front() < 100) throw PreconditionError("rate_report radii must span 2 decades");
  if (opt.families.empty()) throw PreconditionError("rate_report needs at least one family");

  RateScanReport rep;
  rep.which = which;
  rep.baseline = phi_value(F, G, which, opt.search.final);
  rep.psi = field::psi(F, G);
  rep.psi_zero = rep.psi <= 1e-12;

  std::vector<std::optional<Member>> warm(opt.families.size());
  std::vector<double> eps, dec;
  for (double e : eps_grid) {
    RateRow row;
    row.eps = e;
    row.best_phi = INFINITY;
    for (std::size_t k = 0; k < opt.families.size(); ++k) {
      const SearchResult r = phi_bar_upper(F, G, e, which, opt.families[k], opt.search, warm[k]);
      if (!r.warning) warm[k] = r.member;
      if (r.best < row.best_phi) {
        row.best_phi = r.best;
        row.family = opt.families[k];
        row.params = r.member.params();
      }
    }
    row.decrease = rep.baseline - row.best_phi;
    rep.rows.push_back(row);
    eps.push_back(e);
    dec.push_back(row.decrease);
  }

  try {
    rep.fit = exponent_fit(eps, dec);
    rep.fit_ok = true;
  } catch (const PreconditionError& e) {
    rep.fit.warnings.push_back(e.what());
  }
  if (rep.fit_ok) {
    const double refs[3] = {1.0 / 3, 0.5, 2.0 / 3};
    const char* names[3] = {"1/3", "1/2", "2/3"};
    int best = 0;
    for (int k = 1; k < 3; ++k)
      if (std::abs(rep.fit.exponent - refs[k]) < std::abs(rep.fit.exponent - refs[best])) best = k;
    rep.nearest_reference = names[best];
  }

  if (which == PhiKind::max_bracket) {
    rep.strict_decreases = std::all_of(dec.begin(), dec.end(), [](double d) { return d > 0; });
    rep.exponent_ok = rep.fit_ok && rep.fit.exponent >= opt.min_exponent;
    rep.two_thirds_ok = !rep.psi_zero;
    for (std::size_t i = 0; i < eps.size() && !rep.psi_zero; ++i) {
      const double ref = opt.two_thirds_factor * std::cbrt(rep.psi) * std::pow(eps[i], 2.0 / 3);
      rep.two_thirds_ref.push_back(ref);
      rep.two_thirds_ok = rep.two_thirds_ok && dec[i] <= ref;
    }
  } else {
    const bool none = std::all_of(dec.begin(), dec.end(), [](double d) { return d <= 0; });
    rep.C_one_third = rep.fit_ok ? rep.fit.C * std::exp(rep.fit.max_residual) : 0;
    rep.one_third_ok = rep.fit_ok || none;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const double ref = rep.C_one_third * std::cbrt(eps[i]);
      rep.one_third_ref.push_back(ref);
      rep.one_third_ok = rep.one_third_ok && dec[i] <= ref;
    }
  }
  return rep;
}

}  // namespace pbr::rate
