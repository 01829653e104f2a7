#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "pbr/field/jet_field.hpp"
#include "pbr/field/piecewise.hpp"

namespace pbr::witness {

using field::Derivs;
using field::Domain2;
using field::JetField;
using field::PiecewisePoly;

struct WitnessConfig {
  double delta = 0.05;
  double c1 = 125.0;  // c2, c3, c4 follow at spacing delta
  double kappa = 0;   // 0: computed by kappa_search(gamma, r_bound, a0)
  std::vector<int> N_list{100, 1000, 10000};
  int grid_n = 2048;    // fine patch over [supp u] x [c1, c4]
  int coarse_n = 512;   // patch over the whole support
  double w_tail = 120;  // length of the slow rise of w to w0
  double w_ramp = 9.5;  // smoothstep length at the ends of each tail
  double a_taper = 40;  // length of the slow rise of a to a0
  double a_ramp = 2;
  double w0 = 1.05;  // w on c1 and c4
  double a0 = 1.1;
  double gamma = 1.63;
  double r_bound = 0.99;
  double spike_ramp = 3e-4;     // rise time of the w' wiggle
  double spike_plateau = 1.5e-4;
  double edge_slope = 0.001;    // w'(c2) = -w'(c3)

  double c2() const { return c1 + delta; }
  double c3() const { return c1 + 2 * delta; }
  double c4() const { return c1 + 3 * delta; }
  /// Throws PreconditionError on an infeasible configuration.
  void validate() const;
};

/// u, w, a, v of the construction with their derivative closures.
class WitnessFields {
 public:
  const WitnessConfig& config() const { return cfg_; }
  double kappa() const { return kappa_; }

  Derivs u(double p) const { return u_.derivs(p); }
  Derivs w(double q) const { return w_.derivs(q); }
  Derivs w_prime(double q) const { return w_prime_.derivs(q); }
  Derivs v(double q) const { return v_.derivs(q); }
  Derivs a(double q) const;

  const PiecewisePoly& u_poly() const { return u_; }
  const PiecewisePoly& u_prime_poly() const { return u_prime_; }
  const PiecewisePoly& w_poly() const { return w_; }
  const PiecewisePoly& w_prime_poly() const { return w_prime_; }
  const PiecewisePoly& v_poly() const { return v_; }

  double q_support_begin() const { return w_prime_.support_begin(); }
  double q_support_end() const { return w_prime_.support_end(); }
  double p_support_begin() const { return u_.support_begin(); }
  double p_support_end() const { return u_.support_end(); }
  /// max |a| (attained at a0 plus the largest excursion on [c1, c4]).
  double a_sup() const;

  // Fields on a given domain.
  JetField F(const Domain2& d) const;
  JetField G(const Domain2& d) const;
  JetField F_N(const Domain2& d, int N) const;
  /// R(p,q) = w'(a cos Nu + 1)^2 + a' w (a + cos Nu); value-only formula.
  double R(double p, double q, int N) const;
  /// u'(p)^2 R(p, q).
  double u2R(double p, double q, int N) const;

  nlohmann::json to_json() const;

 private:
  friend WitnessFields build_witness(const WitnessConfig& cfg);
  WitnessConfig cfg_;
  double kappa_ = 0;
  double plateau_ = 0;  // length of the negative plateau of w
  PiecewisePoly u_prime_, u_, w_prime_, w_, v_;
  PiecewisePoly a_left_, a_right_;  // tapers, antiderivatives of level splines
};

WitnessFields build_witness(const WitnessConfig& cfg = {});

struct InvariantCheck {
  std::string name;
  double value = 0, bound = 0;
  bool pass = false;
};

/// Direct evaluation of every construction condition on fine 1-D grids.
std::vector<InvariantCheck> check_invariants(const WitnessFields& f);

}  // namespace pbr::witness
