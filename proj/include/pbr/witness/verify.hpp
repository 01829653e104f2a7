#pragma once

#include <vector>

#include "pbr/witness/witness.hpp"

namespace pbr::witness {

/// Sampling patches: a fine grid over [supp u] x [c1, c4], where w' carries
/// its narrow wiggle, and a coarse grid over [supp u] x [supp w'].
std::vector<Domain2> verification_patches(const WitnessFields& f, int n, int coarse_n);

/// R as a value-only field (jet order 0).
JetField r_field(const WitnessFields& f, const Domain2& d, int N);

struct RBoundReport {
  int N = 0;
  double max_abs_R = 0;
  double p_at = 0, q_at = 0;
  /// max over q outside [c1, c4] of |w'|(|a|+1)^2 + |a'||w|(|a|+1), a bound
  /// on |R| there for every p and N.
  double case2_envelope = 0;
  bool pass = false;
};

/// |R| <= r_bound over the patches and the Case 2 envelope <= 0.36.
RBoundReport r_bound_check(const WitnessFields& f, int N, int n, int coarse_n);

struct VerifyRow {
  int N = 0;
  double ratio_max = 0, ratio_min = 0, residual = 0, maxR = 0;
};

struct VerifyReport {
  double base_max = 0, base_min = 0;  // max / min of {{F,G},F}
  std::vector<VerifyRow> rows;
  double residual_spread = 0;  // max/min of residual * N over rows
  bool maxR_ok = false, ratios_ok = false, residual_ok = false;
  bool pass() const { return maxR_ok && ratios_ok && residual_ok; }
};

/// Double brackets of (F_N, G) against u'^2 R and against the unperturbed
/// pair.  Ratios are asserted <= 0.995 for N >= 1000, |R| <= r_bound for
/// all N, and residual * N within a factor 2 across N.
VerifyReport verify_witness(const WitnessFields& f, const std::vector<int>& N_list, int n, int coarse_n);

struct CutoffReport {
  double bracket_residual = 0;  // max |{phiF,phiG} - phi^2 {F,G}|
  double double_residual = 0;   // max |{{phiF,phiG},phiF} - {{F,G},F}|
  double max_cut = 0, max_uncut = 0;
  bool pass = false;
};

/// Checks both cutoff identities on the nodes of phi's domain.
CutoffReport cutoff_identity_report(const JetField& phi, const JetField& F, const JetField& G, double tol = 1e-9);

/// phi = phi_p(p) phi_q(q): plateaus [p_lo, p_hi] x [q_lo, q_hi], smoothstep
/// ramps outside.  Throws PreconditionError unless the plateau covers the
/// supports of u and of w, v.
CutoffReport cutoff_witness(const WitnessFields& f, double p_lo, double p_hi, double q_lo, double q_hi,
                            int n = 512);
/// Plateau = supports widened by `margin` on each side.
CutoffReport cutoff_witness(const WitnessFields& f, double margin = 1.0, int n = 512);

}  // namespace pbr::witness
