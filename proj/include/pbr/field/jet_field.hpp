#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <vector>

#include "pbr/field/domain.hpp"
#include "pbr/field/jet.hpp"

namespace pbr::field {

using Jet = Jet2<double>;
/// Derivatives f, f', ..., f'''' of a univariate function at a point.
using Derivs = std::array<double, Jet::kMaxOrder + 1>;
using Univariate = std::function<Derivs(double)>;

enum class Provenance { analytic, sampled };

/// A smooth function on a Domain2 that can report its jet of order
/// <= max_order() at any point.  Immutable and cheap to copy.
class JetField {
 public:
  using Eval = std::function<Jet(double p, double q, int order)>;

  JetField(Domain2 domain, Eval eval, Provenance provenance = Provenance::analytic,
           int max_order = Jet::kMaxOrder);

  /// Throws BoundsError if order exceeds max_order().
  Jet jet(double p, double q, int order) const;
  double value(double p, double q) const { return eval_(p, q, 0).value(); }

  const Domain2& domain() const { return domain_; }
  Provenance provenance() const { return provenance_; }
  int max_order() const { return max_order_; }
  bool analytic() const { return provenance_ == Provenance::analytic; }

 private:
  Domain2 domain_;
  Eval eval_;
  Provenance provenance_;
  int max_order_;
};

void require_same_domain(const JetField& a, const JetField& b);

// Analytic building blocks.
JetField constant(const Domain2& d, double c);
JetField coord_p(const Domain2& d);
JetField coord_q(const Domain2& d);
JetField of_p(const Domain2& d, Univariate f);
JetField of_q(const Domain2& d, Univariate f);
JetField apply(Univariate f, const JetField& x);
JetField sin(const JetField& x);
JetField cos(const JetField& x);

Derivs sin_derivs(double x);
Derivs cos_derivs(double x);

JetField operator+(const JetField& a, const JetField& b);
JetField operator-(const JetField& a, const JetField& b);
JetField operator*(const JetField& a, const JetField& b);
JetField operator*(double s, const JetField& a);
JetField operator-(const JetField& a);

/// Node values of a field on its own domain, array(i, j) = f(p_i, q_j).
Eigen::ArrayXXd sample(const JetField& f);

/// Field defined by node values.  Derivatives come from fourth-order central
/// differences (periodic wrap on the torus, zero extension on a rectangle);
/// off-node jets interpolate the derivative arrays with cubic Lagrange
/// stencils.
JetField sampled_field(const Domain2& d, const Eigen::ArrayXXd& values);

/// Central-difference weights of 4th-order accuracy for the m-th derivative,
/// m = 1..4, on the offsets -r..r (r = 2 for m <= 2, r = 3 otherwise).
std::vector<double> central_weights(int m);

}  // namespace pbr::field
