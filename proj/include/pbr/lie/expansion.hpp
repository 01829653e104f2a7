#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "pbr/lie/flow_word.hpp"

namespace pbr::lie {

/// Result of expanding the generator of a flow word and checking it against
/// closed-form coefficients.
struct ExpansionReport {
  std::string word;
  int T = kDefaultSeriesOrder;
  LieSeries series{kDefaultSeriesOrder};
  bool match = false;
  std::vector<std::string> mismatches;  // human-readable, empty when match
};

/// Path tau -> phi_{tau(F+G)/2} f_{-tau} g_{-tau} f_tau g_tau phi_{-tau(F+G)/2}.
FlowWord commutator_word();

/// Path tau -> phi_{tau(F-G)/6} theta(tau F, tau G) phi_{tau(F-G)/6}^{-1}
/// with theta(F,G) = [phi_{-F} phi_{-G}, phi_{F+G}].
FlowWord double_bracket_word();

/// Expected generator 2 tau P + (tau^3/6) I, P = {F,G},
/// I = {{P,F},F} + {{P,G},G}.  tau^4 and higher are unconstrained.
ExpansionReport verify_commutator_expansion(int T = kDefaultSeriesOrder);

/// Expected generator 3 tau^2 (A+B) + tau^4 Q with A = {{F,G},F}/2,
/// B = {{F,G},G}/2, and Q of pure degree 5.
ExpansionReport verify_double_bracket_expansion(int T = kDefaultSeriesOrder);

/// {"word", "T", "coefficients": [{"tau_power", "terms": [{"lyndon","num","den"}]}], "match"}
nlohmann::json to_json(const ExpansionReport& report);

/// Terms of one LiePoly in the JSON layout above.
nlohmann::json terms_to_json(const LiePoly& p);

}  // namespace pbr::lie
