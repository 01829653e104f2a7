#include "pbr/field/functionals.hpp"

#include <cmath>

#include "pbr/errors.hpp"

namespace pbr::field {

FunctionalVector::FunctionalVector(double v1, double v2, double v3, double v4) : v{v1, v2, v3, v4} {}

void FunctionalVector::validate() const {
  bool positive = false;
  for (double x : v) {
    if (!(x >= 0) || !std::isfinite(x)) throw PreconditionError("functional weights must be finite and non-negative");
    positive = positive || x > 0;
  }
  if (!positive) throw PreconditionError("functional weight vector must be non-zero");
}

FunctionalVector FunctionalVector::scaled(double alpha, double beta) const {
  const double a = alpha * alpha * beta, b = alpha * beta * beta;
  return {a * v[0], a * v[1], b * v[2], b * v[3]};
}

DoubleBrackets double_brackets(const JetField& F, const JetField& G) {
  const JetField P = poisson(F, G);
  return {extrema(sample(poisson(P, F))), extrema(sample(poisson(P, G)))};
}

double phi_v(const FunctionalVector& v, const DoubleBrackets& b) {
  return v.v[0] * b.fgf.max - v.v[1] * b.fgf.min + v.v[2] * b.fgg.max - v.v[3] * b.fgg.min;
}

double tol_disc(const Domain2& d) { return 10 * d.h() * d.h(); }

double phi_v(const FunctionalVector& v, const JetField& F, const JetField& G) {
  v.validate();
  const DoubleBrackets b = double_brackets(F, G);
  const double value = phi_v(v, b);
  const double scale = std::max({b.fgf.norm(), b.fgg.norm(), 1.0});
  if (value < -tol_disc(F.domain()) * scale * (v.v[0] + v.v[1] + v.v[2] + v.v[3])) {
    throw CheckFailure("Phi^v evaluated negative: " + std::to_string(value));
  }
  return value;
}

namespace {

bool vanishes_on_margin(const JetField& f) {
  try {
    require_compact_support(f);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

}  // namespace

JetField bracket_I(const JetField& F, const JetField& G) {
  const JetField P = poisson(F, G);
  return poisson(poisson(P, F), F) + poisson(poisson(P, G), G);
}

double psi(const JetField& F, const JetField& G) {
  require_same_domain(F, G);
  if ((!F.analytic() || !G.analytic()) && F.domain().n < 128) {
    throw PreconditionError("psi on sampled fields needs n >= 128");
  }
  const double value = extrema(sample(bracket_I(F, G))).norm();
  const double bracket_norm = extrema(sample(poisson(F, G))).norm();
  // Positivity of I is a theorem only for compactly supported fields.
  if (bracket_norm > 1e-8 && !(value > 0) && vanishes_on_margin(F) && vanishes_on_margin(G)) {
    throw CheckFailure("I(F,G) vanishes on the grid although {F,G} does not");
  }
  return value;
}

LhReport lh_check(const JetField& F, const JetField& G, double tol) {
  require_same_domain(F, G);
  const Extrema g = extrema(sample(G));
  if (g.norm() == 0) throw PreconditionError("lh_check requires G not identically zero");
  const JetField P = poisson(F, G);
  const Extrema pe = extrema(sample(P));
  const Extrema x = extrema(sample(poisson(P, F)));
  LhReport r;
  r.tol = tol < 0 ? tol_disc(F.domain()) : tol;
  r.lhs = x.max;
  r.rhs = pe.norm() == 0 ? 0.0 : pe.norm() * pe.norm() / (2 * g.osc());
  r.margin = r.lhs - r.rhs;
  r.pass = r.margin >= -r.tol;
  return r;
}

namespace {

KolmogorovReport kolmogorov(const JetField& F, const JetField& G, const BracketWord& w, double scale_num,
                            int bracket_power) {
  const double bnorm = extrema(sample(poisson(F, G))).norm();
  if (bnorm <= 1e-12) throw PreconditionError("kolmogorov_ratio requires {F,G} not identically zero");
  KolmogorovReport r;
  r.word = w.to_string();
  r.osc_value = extrema(sample(iterated_bracket(w, F, G))).osc();
  r.ratio = r.osc_value * scale_num / std::pow(bnorm, bracket_power);
  return r;
}

}  // namespace

KolmogorovReport kolmogorov_ratio(const JetField& F, const JetField& G, int N) {
  if (N < 1 || N > 4) throw BoundsError("kolmogorov_ratio: N must lie in [1, 4] for order-4 jets");
  require_same_domain(F, G);
  const double gnorm = extrema(sample(G)).norm();
  return kolmogorov(F, G, BracketWord::ad_power(N), std::pow(gnorm, N - 1), N);
}

KolmogorovReport kolmogorov_ratio(const JetField& F, const JetField& G, int k, int m) {
  if (k < 0 || m < 1 || (k + 1) * m > 4) {
    throw BoundsError("kolmogorov_ratio: (k+1) m must lie in [1, 4] for order-4 jets");
  }
  require_same_domain(F, G);
  const double fnorm = extrema(sample(F)).norm();
  const double gnorm = extrema(sample(G)).norm();
  return kolmogorov(F, G, BracketWord::ad_iterated(k, m), std::pow(fnorm, k * m) * std::pow(gnorm, m - 1),
                    (k + 1) * m);
}

void require_compact_support(const JetField& f, double atol) {
  const Domain2& d = f.domain();
  if (d.periodic()) return;
  const Eigen::ArrayXXd a = sample(f);
  for (int j = 0; j < d.n; ++j) {
    for (int i = 0; i < d.n; ++i) {
      if (d.in_margin(i, j) && std::abs(a(i, j)) > atol) {
        throw PreconditionError("field does not vanish on the margin band (value " + std::to_string(a(i, j)) +
                                " at p=" + std::to_string(d.p(i)) + ", q=" + std::to_string(d.q(j)) + ")");
      }
    }
  }
}

namespace {

double relative(double lhs, double rhs, double scale) {
  const double denom = std::max({std::abs(lhs), std::abs(rhs), scale});
  return denom == 0 ? std::abs(lhs - rhs) : std::abs(lhs - rhs) / denom;
}

}  // namespace

IdentityReport integral_identity_check(const JetField& P, const JetField& Q, const JetField& R) {
  require_same_domain(P, Q);
  require_same_domain(P, R);
  for (const JetField* f : {&P, &Q, &R}) require_compact_support(*f);
  const Domain2& d = P.domain();
  const Eigen::ArrayXXd left = sample(poisson(P, Q)) * sample(R);
  const Eigen::ArrayXXd right = sample(poisson(R, P)) * sample(Q);
  IdentityReport r;
  r.lhs = integrate(left, d);
  r.rhs = integrate(right, d);
  r.rel_err = relative(r.lhs, r.rhs, integrate(left.abs(), d));
  return r;
}

IdentityReport square_sum_identity(const JetField& F, const JetField& G) {
  require_same_domain(F, G);
  for (const JetField* f : {&F, &G}) require_compact_support(*f);
  const Domain2& d = F.domain();
  const JetField P = poisson(F, G);
  const Eigen::ArrayXXd X = sample(poisson(P, F));
  const Eigen::ArrayXXd Y = sample(poisson(P, G));
  IdentityReport r;
  r.lhs = integrate(sample(bracket_I(F, G)) * sample(P), d);
  r.rhs = -integrate(X.square() + Y.square(), d);
  r.rel_err = relative(r.lhs, r.rhs, 0);
  return r;
}

double zero_mean_residual(const JetField& F, const JetField& G) {
  require_same_domain(F, G);
  const Domain2& d = F.domain();
  const Eigen::ArrayXXd b = sample(poisson(F, G));
  const double norm = extrema(b).norm();
  if (norm == 0) return 0;
  const double area = d.cell_area() * d.n * d.n;
  return std::abs(integrate(b, d)) / (area * norm);
}

double jacobi_residual(const JetField& F, const JetField& G, const JetField& H) {
  const JetField sum =
      poisson(poisson(F, G), H) + poisson(poisson(G, H), F) + poisson(poisson(H, F), G);
  return extrema(sample(sum)).norm();
}

double cutoff_residual(const JetField& phi, const JetField& F, const JetField& G) {
  const JetField diff = poisson(phi * F, phi * G) - phi * phi * poisson(F, G);
  return extrema(sample(diff)).norm();
}

namespace {

SymmetryReport finish(std::string relation, double lhs, double rhs, double tol) {
  SymmetryReport r;
  r.relation = std::move(relation);
  r.lhs = lhs;
  r.rhs = rhs;
  r.rel_err = relative(lhs, rhs, 0);
  r.pass = r.rel_err <= tol;
  return r;
}

}  // namespace

SymmetryReport symmetry_check(const FunctionalVector& v, const JetField& F, const JetField& G,
                              SymmetryElement element, double tol) {
  v.validate();
  const DoubleBrackets base = double_brackets(F, G);
  switch (element) {
    case SymmetryElement::A:
      return finish("Phi^v(F,-G) = Phi^Av(F,G)", phi_v(v, double_brackets(F, -G)), phi_v(v.A(), base), tol);
    case SymmetryElement::B:
      return finish("Phi^v(-F,G) = Phi^Bv(F,G)", phi_v(v, double_brackets(-F, G)), phi_v(v.B(), base), tol);
    case SymmetryElement::C:
      return finish("Phi^v(-G,-F) = Phi^Cv(F,G)", phi_v(v, double_brackets(-G, -F)), phi_v(v.C(), base),
                    tol);
  }
  throw std::logic_error("unreachable");
}

SymmetryReport symmetry_check(const FunctionalVector& v, const JetField& F, const JetField& G, double alpha,
                              double beta, double tol) {
  v.validate();
  if (!(alpha > 0) || !(beta > 0)) throw PreconditionError("scaling factors must be positive");
  return finish("Phi^v(aF,bG) = Phi^w(F,G)", phi_v(v, double_brackets(alpha * F, beta * G)),
                phi_v(v.scaled(alpha, beta), double_brackets(F, G)), tol);
}

}  // namespace pbr::field
