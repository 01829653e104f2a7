#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbr/field/jet_field.hpp"

namespace pbr::rate {

using field::JetField;

enum class PhiKind {
  max_bracket,     // max {F,G}
  double_bracket,  // max {{F,G},F} + max {{F,G},G}
};

enum class FamilyKind {
  oscillatory,     // F + t eps sin(lambda F + phiF), G + t eps sin(lambda G + phiG)
  modulated,       // F + t eps cos(mu q + phi1) sin(lambda F + phi0), G fixed
  random_fourier,  // F + t eps sF, G + t eps sG; sF, sG seeded, l1-normalized
};

std::string family_name(FamilyKind k);
std::string phi_name(PhiKind k);

/// One member of a family.  Oscillatory x = (log lambda, phiF, phiG, t);
/// modulated x = (log lambda, phi0, mu, phi1, t); random-Fourier x = (t)
/// with the trigonometric polynomials drawn from `seed`.  t is clamped to
/// [0, 1], which keeps every member inside the eps-ball.
struct Member {
  FamilyKind kind = FamilyKind::oscillatory;
  std::vector<double> x;
  std::uint64_t seed = 0;
  double eps = 0;

  std::string params() const;
  /// The same perturbation expressed at a larger radius (t rescaled).
  Member at_radius(double new_eps) const;
};

struct Perturbed {
  JetField F, G;
};

Perturbed perturb(const JetField& F, const JetField& G, const Member& m);

struct PhiOptions {
  int n = 128;         // nodes per axis of the sampling grid
  int refine_top = 8;  // local maxima polished by a simplex search in (p, q)
};

/// Phi on the grid, each maximum polished from the best node maxima.
double phi_value(const JetField& F, const JetField& G, PhiKind kind, const PhiOptions& opt = {});

struct SearchOptions {
  int budget = 64;  // Phi evaluations per family during the search
  PhiOptions search{128, 4};
  PhiOptions final{256, 16};  // the reported values are re-evaluated here
  std::uint64_t seed = 0;
};

struct SearchResult {
  double baseline = 0;  // Phi(F, G)
  double best = 0;      // <= baseline; an upper bound on the perturbed infimum
  Member member;        // t = 0 when nothing beat the baseline
  int evaluations = 0;
  bool warning = false;  // no member decreased Phi
};

/// Coarse sweep of the family's parameter box followed by simplex
/// refinement; `warm` is evaluated alongside the final candidate.
SearchResult phi_bar_upper(const JetField& F, const JetField& G, double eps, PhiKind kind, FamilyKind family,
                           const SearchOptions& opt = {}, const std::optional<Member>& warm = std::nullopt);

struct ExponentFit {
  double C = 0, exponent = 0;
  double residual = 0;      // RMS of the log residuals
  double max_residual = 0;  // max |log residual|
  int used = 0, dropped = 0;
  std::vector<std::string> warnings;
};

/// Least squares of log d against log eps.  Points with d <= 0 are dropped
/// with a warning; throws PreconditionError if fewer than 3 remain.
ExponentFit exponent_fit(const std::vector<double>& eps, const std::vector<double>& d);

struct RateRow {
  double eps = 0, best_phi = 0, decrease = 0;
  FamilyKind family = FamilyKind::oscillatory;
  std::string params;
};

struct RateOptions {
  SearchOptions search;
  std::vector<FamilyKind> families{FamilyKind::oscillatory, FamilyKind::modulated, FamilyKind::random_fourier};
  double two_thirds_factor = 5;   // d <= factor * Psi^(1/3) eps^(2/3)
  double min_exponent = 0.55;     // fitted exponent floor for max {F,G}
};

struct RateScanReport {
  PhiKind which = PhiKind::max_bracket;
  double baseline = 0;
  double psi = 0;
  bool psi_zero = false;  // the 2/3 reference is skipped
  std::vector<RateRow> rows;
  ExponentFit fit;
  bool fit_ok = false;
  std::string nearest_reference;  // which of 1/3, 1/2, 2/3 the exponent is closest to

  // max {F,G}: strict decreases, exponent floor, the 2/3 envelope
  bool strict_decreases = false, exponent_ok = false, two_thirds_ok = false;
  std::vector<double> two_thirds_ref;  // factor * Psi^(1/3) eps^(2/3)
  // double brackets: d <= C_fit exp(max log residual) eps^(1/3)
  double C_one_third = 0;
  bool one_third_ok = false;
  std::vector<double> one_third_ref;

  bool pass() const;
};

/// Scans eps in ascending order, warm-starting each radius with the previous
/// best member so best_phi never increases with eps.  Decreases are lower
/// bounds on the true decrease: only feasible members are ever evaluated.
RateScanReport rate_report(const JetField& F, const JetField& G, std::vector<double> eps_grid, PhiKind which,
                           const RateOptions& opt = {});

/// n log-spaced radii from lo to hi.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace pbr::rate
