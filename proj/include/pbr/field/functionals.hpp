#pragma once

#include <array>
#include <string>

#include "pbr/field/bracket.hpp"
#include "pbr/field/grid.hpp"

namespace pbr::field {

/// Weights (v1, v2, v3, v4) >= 0, not all zero.
struct FunctionalVector {
  std::array<double, 4> v{};

  FunctionalVector() = default;
  FunctionalVector(double v1, double v2, double v3, double v4);

  /// Throws PreconditionError for a negative entry or the zero vector.
  void validate() const;
  /// The dihedral generators acting on weights.
  FunctionalVector A() const { return {v[1], v[0], v[2], v[3]}; }
  FunctionalVector B() const { return {v[0], v[1], v[3], v[2]}; }
  FunctionalVector C() const { return {v[2], v[3], v[0], v[1]}; }
  /// Weights w with Phi^v(alpha F, beta G) = Phi^w(F, G):
  /// {{aF,bG},aF} = a^2 b X and {{aF,bG},bG} = a b^2 Y, so the X weights
  /// scale by a^2 b and the Y weights by a b^2.
  FunctionalVector scaled(double alpha, double beta) const;
  bool operator==(const FunctionalVector&) const = default;
};

/// Node extrema of X = {{F,G},F} and Y = {{F,G},G}.
struct DoubleBrackets {
  Extrema fgf, fgg;
};

DoubleBrackets double_brackets(const JetField& F, const JetField& G);

/// Phi^v = v1 max X - v2 min X + v3 max Y - v4 min Y over grid nodes.
double phi_v(const FunctionalVector& v, const DoubleBrackets& b);
double phi_v(const FunctionalVector& v, const JetField& F, const JetField& G);

/// Uniform norm over nodes of {{{F,G},F},F} + {{{F,G},G},G}.
double psi(const JetField& F, const JetField& G);

/// Field I(F,G) = {{{F,G},F},F} + {{{F,G},G},G}.
JetField bracket_I(const JetField& F, const JetField& G);

/// Discretization tolerance 10 h^2 of a domain.
double tol_disc(const Domain2& d);

struct LhReport {
  double lhs = 0, rhs = 0, margin = 0, tol = 0;
  bool pass = false;
};

/// max {{F,G},F} against ||{F,G}||^2 / (2 osc G).
LhReport lh_check(const JetField& F, const JetField& G, double tol = -1);

struct KolmogorovReport {
  std::string word;
  double osc_value = 0, ratio = 0;
};

/// osc (ad_F)^N G and osc * ||G||^(N-1) / ||{F,G}||^N.
KolmogorovReport kolmogorov_ratio(const JetField& F, const JetField& G, int N);
/// osc (ad_H)^m G with H = (ad_G)^k F, and
/// osc * ||F||^(k m) ||G||^(m-1) / ||{F,G}||^((k+1) m).
KolmogorovReport kolmogorov_ratio(const JetField& F, const JetField& G, int k, int m);

struct IdentityReport {
  double lhs = 0, rhs = 0, rel_err = 0;
};

/// Integral of {P,Q} R against the integral of {R,P} Q.
IdentityReport integral_identity_check(const JetField& P, const JetField& Q, const JetField& R);

/// Integral of I(F,G) {F,G} against -integral of (X^2 + Y^2).
IdentityReport square_sum_identity(const JetField& F, const JetField& G);

/// |integral {F,G}| / (area * ||{F,G}||); zero when the bracket vanishes.
double zero_mean_residual(const JetField& F, const JetField& G);

/// max |{{F,G},H} + {{G,H},F} + {{H,F},G}| over nodes.
double jacobi_residual(const JetField& F, const JetField& G, const JetField& H);

/// max |{phi F, phi G} - phi^2 {F,G}| over nodes.
double cutoff_residual(const JetField& phi, const JetField& F, const JetField& G);

enum class SymmetryElement { A, B, C };

struct SymmetryReport {
  std::string relation;
  double lhs = 0, rhs = 0, rel_err = 0;
  bool pass = false;
};

SymmetryReport symmetry_check(const FunctionalVector& v, const JetField& F, const JetField& G,
                              SymmetryElement element, double tol = 1e-12);
SymmetryReport symmetry_check(const FunctionalVector& v, const JetField& F, const JetField& G,
                              double alpha, double beta, double tol = 1e-12);

/// Throws PreconditionError if a rectangle-domain field is nonzero on the
/// margin band (|f| > atol at some band node).
void require_compact_support(const JetField& f, double atol = 1e-12);

}  // namespace pbr::field
