#include "pbr/field/trig.hpp"

#include <cmath>
#include <random>

namespace pbr::field {

JetField trig_field(const Domain2& d, std::vector<TrigTerm> terms) {
  return JetField(d, [terms = std::move(terms)](double p, double q, int order) {
    Jet out(order);
    for (const TrigTerm& t : terms) {
      const Jet theta = double(t.k) * Jet::variable_p(p, order) + double(t.l) * Jet::variable_q(q, order);
      const double s = std::sin(theta.value()), c = std::cos(theta.value());
      // a cos + b sin and its derivatives in theta
      const Derivs f{t.a * c + t.b * s, -t.a * s + t.b * c, -t.a * c - t.b * s, t.a * s - t.b * c,
                     t.a * c + t.b * s};
      out += compose(f, theta);
    }
    return out;
  });
}

std::vector<TrigTerm> random_trig_terms(std::uint64_t seed, int count, int max_freq) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> freq(-max_freq, max_freq);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::vector<TrigTerm> terms;
  while (static_cast<int>(terms.size()) < count) {
    TrigTerm t;
    t.k = freq(rng);
    t.l = freq(rng);
    if (t.k == 0 && t.l == 0) continue;
    const double damp = 1.0 / (1 + t.k * t.k + t.l * t.l);
    t.a = amp(rng) * damp;
    t.b = amp(rng) * damp;
    terms.push_back(t);
  }
  return terms;
}

}  // namespace pbr::field
