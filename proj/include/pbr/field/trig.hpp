#pragma once

#include <cstdint>
#include <vector>

#include "pbr/field/jet_field.hpp"

namespace pbr::field {

/// a cos(k p + l q) + b sin(k p + l q)
struct TrigTerm {
  int k = 0, l = 0;
  double a = 0, b = 0;
};

/// Analytic trigonometric polynomial on the torus (or any domain).
JetField trig_field(const Domain2& d, std::vector<TrigTerm> terms);

/// Seeded random trigonometric polynomial with `count` terms, frequencies in
/// [-max_freq, max_freq]^2 \ {0} and amplitudes uniform in [-1, 1] damped by
/// 1 / (1 + k^2 + l^2).
std::vector<TrigTerm> random_trig_terms(std::uint64_t seed, int count = 4, int max_freq = 3);

}  // namespace pbr::field
