#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pbr/lie/lie_poly.hpp"
#include "pbr/lie/lie_series.hpp"

namespace pbr::lie {

/// Polynomial in tau with rational coefficients, lowest power first.
using TimePoly = std::vector<Rational>;

/// Hard cap on the truncation order accepted by path_generator.
inline constexpr int kMaxSeriesOrder = 8;
inline constexpr int kDefaultSeriesOrder = 5;

/// Expression tree describing a path tau -> diffeomorphism built from
/// Hamiltonian flows.  Immutable; copies share structure.
///
///   factor(X, c)     the time-c(tau) flow of the degree-1 Hamiltonian X
///   product(a,b,..)  composition a(tau) o b(tau) o ...
///   inverse(a)       a(tau)^{-1}
///   conjugate(a, c)  c(tau) o a(tau) o c(tau)^{-1}
class FlowWord {
 public:
  enum class Kind { factor, product, inverse, conjugate };

  /// Throws std::invalid_argument unless `generator` is nonzero of pure degree 1.
  static FlowWord factor(const LiePoly& generator, TimePoly time);
  /// Throws std::invalid_argument on an empty child list.
  static FlowWord product(std::vector<FlowWord> children);
  static FlowWord inverse(const FlowWord& child);
  static FlowWord conjugate(const FlowWord& child, const FlowWord& by);

  Kind kind() const;
  const LiePoly& generator() const;    // factor only
  const TimePoly& time() const;        // factor only
  const std::vector<FlowWord>& children() const;  // product: all; inverse: {a}; conjugate: {a, by}

  /// Rewrites every conjugate(a, c) into product(c, a, inverse(c)).
  FlowWord normalized() const;

  std::string to_string() const;

 private:
  struct Node;
  explicit FlowWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Lie series of the time-dependent Hamiltonian generating tau -> word(tau),
/// truncated after tau^T.  Throws BoundsError unless 1 <= T <= 8.
LieSeries path_generator(const FlowWord& word, int T = kDefaultSeriesOrder);

/// Pullback of a tau-dependent Hamiltonian H along the path generated by A:
/// the series of H(tau) o a_tau^{-1}, obtained from
///   d/dtau Pi(H) = -[Pi(H), A(tau)],  Pi_0 = identity.
LieSeries pullback(const LieSeries& A, const LieSeries& H);

/// Generator of the inverse path, solved from gen(a . a^{-1}) == 0.
LieSeries inverse_generator(const LieSeries& A);

}  // namespace pbr::lie
