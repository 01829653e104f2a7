#include "pbr/lie/expansion.hpp"

#include <stdexcept>

namespace pbr::lie {

namespace {

constexpr int kDeg = kMaxLyndonDegree;

FlowWord flow(const LiePoly& x, const Rational& rate) {
  return FlowWord::factor(x, TimePoly{0, rate});
}

void expect(ExpansionReport& r, int k, const LiePoly& expected) {
  if (k > r.T) return;
  if (!(r.series[k] == expected)) {
    r.mismatches.push_back("tau^" + std::to_string(k) + ": got " + r.series[k].to_string() +
                           ", expected " + expected.to_string());
  }
}

}  // namespace

FlowWord commutator_word() {
  const LiePoly F = LiePoly::F(kDeg), G = LiePoly::G(kDeg);
  const LiePoly half_sum = Rational(1, 2) * (F + G);
  return FlowWord::product({flow(half_sum, 1), flow(F, -1), flow(G, -1), flow(F, 1), flow(G, 1),
                            flow(half_sum, -1)});
}

FlowWord double_bracket_word() {
  const LiePoly F = LiePoly::F(kDeg), G = LiePoly::G(kDeg);
  const FlowWord front = FlowWord::product({flow(F, -1), flow(G, -1)});
  const FlowWord sum = flow(F + G, 1);
  const FlowWord theta =
      FlowWord::product({front, sum, FlowWord::inverse(front), FlowWord::inverse(sum)});
  return FlowWord::conjugate(theta, flow(Rational(1, 6) * (F - G), 1));
}

ExpansionReport verify_commutator_expansion(int T) {
  ExpansionReport r;
  r.T = T;
  const FlowWord w = commutator_word();
  r.word = w.to_string();
  r.series = path_generator(w, T);

  const LiePoly F = LiePoly::F(kDeg), G = LiePoly::G(kDeg);
  const LiePoly P = bracket(F, G);
  const LiePoly I = bracket(bracket(P, F), F) + bracket(bracket(P, G), G);
  const LiePoly zero(kDeg);
  expect(r, 0, zero);
  expect(r, 1, Rational(2) * P);
  expect(r, 2, zero);
  expect(r, 3, Rational(1, 6) * I);
  r.match = r.mismatches.empty();
  return r;
}

ExpansionReport verify_double_bracket_expansion(int T) {
  ExpansionReport r;
  r.T = T;
  const FlowWord w = double_bracket_word();
  r.word = w.to_string();
  r.series = path_generator(w, T);

  const LiePoly F = LiePoly::F(kDeg), G = LiePoly::G(kDeg);
  const LiePoly P = bracket(F, G);
  const LiePoly A = Rational(1, 2) * bracket(P, F);
  const LiePoly B = Rational(1, 2) * bracket(P, G);
  const LiePoly zero(kDeg);
  expect(r, 0, zero);
  expect(r, 1, zero);
  expect(r, 2, Rational(3) * (A + B));
  expect(r, 3, zero);
  if (T >= 4 && !r.series[4].is_homogeneous(5)) {
    r.mismatches.push_back("tau^4: coefficient is not purely degree 5: " +
                           r.series[4].to_string());
  }
  r.match = r.mismatches.empty();
  return r;
}

nlohmann::json terms_to_json(const LiePoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [w, c] : p.terms()) {
    if (!c.get_num().fits_slong_p() || !c.get_den().fits_slong_p()) {
      throw std::overflow_error("coefficient does not fit a 64-bit integer: " + c.get_str());
    }
    terms.push_back({{"lyndon", w.str()},
                     {"num", c.get_num().get_si()},
                     {"den", c.get_den().get_si()}});
  }
  return terms;
}

nlohmann::json to_json(const ExpansionReport& report) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int k = 0; k <= report.series.order(); ++k) {
    coeffs.push_back({{"tau_power", k}, {"terms", terms_to_json(report.series[k])}});
  }
  return {{"word", report.word},
          {"T", report.T},
          {"coefficients", coeffs},
          {"match", report.match}};
}

}  // namespace pbr::lie
