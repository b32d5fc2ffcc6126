#pragma once

#include <cstddef>
#include <iosfwd>

#include "qdo/coupling.hpp"
#include "qdo/gaussian_state.hpp"
#include "qdo/linalg.hpp"

namespace qdo {

/// Gaussian tangle of mode i against the rest: (||rho^T_i||_1 - 1)^2 / 4 with
/// ||rho^T_i||_1 = sqrt(u) + sqrt(u - 1), u = <chi_i^2><P_i^2> clamped to >= 1.
double mode_tangle(const GroundStateCM& cm, std::size_t i);
/// Same, from the local purity product directly.
double tangle_from_local_product(double u);

/// Monogamy bound f(x) = (sqrt(x) + sqrt(x + 1) - 1)^2 / 4 for x > 0, else 0.
double f_bound(double x);

/// Reduced-tangle map g(x) = x (1 + sqrt(x))^2 / (1 + 2 sqrt(x))^2.
double g_reduce(double x);

/// Upper bound on the pairwise tangle, f(-<chi_i chi_j><P_i P_j>). Exactly zero
/// when the product is non-negative (positive partial transpose).
double pair_bound(const GroundStateCM& cm, std::size_t i, std::size_t j);

/// Tangle of the isolated two-mode ground state with coupling w:
/// (sqrt(e+/e-) - 1)^2 / 4, e+- = sqrt(1 +- |w|). Throws SeriesDivergent for |w| >= 1.
double reference_tangle(double w);

/// Entanglement distribution index between oscillators mu and xi: the sum of
/// the nine pair bounds over the sum of the nine reference tangles.
double edi(const GroundStateCM& cm, const CouplingMatrix& w, std::size_t mu, std::size_t xi);

struct ReducedTangle {
  Vector per_mode;  // g(tau_G(i))
  double total = 0.0;
};

ReducedTangle reduced_tangle_total(const GroundStateCM& cm);

/// S_inf from the covariance diagonals: (1/4) sum_i (<chi_i^2> + <P_i^2> - 2).
double weighted_series_sum(const GroundStateCM& cm);

struct MixedPairTangle {
  double value = 0.0;
  double m_min = 0.0;
  double phi_min = 0.0;
  bool ppt_zero = false;
  /// eta* <= tolerance: the phi parametrisation collapsed (always true for pure pairs).
  bool degenerate_branch = false;
  /// 1 - xi+^2 / eta* was negative and its square root was clamped to zero.
  bool clamped_sine = false;
};

/// Pairwise tangle of a mixed two-mode Gaussian state, f(min_phi m(phi)).
///
/// The minimum over phi is found on a dense grid and refined by golden-section
/// search. When eta* is at or below tol::degenerate_eta the cos/sin terms are
/// dropped and m = xi-^2 / (2 (ab - c-^2)(a^2 + b^2 + 2 c+ c-)).
MixedPairTangle mixed_pair_tangle(const TwoModeStandardForm& sf);

/// Complete monogamy analysis of a ground state.
struct TangleReport {
  Vector tau_mode;
  Vector reduced;           // g(tau_mode)
  double tau_tilde_total = 0.0;
  Matrix pair_bounds;       // symmetric, zero diagonal
  Vector monogamy_margins;  // tau_mode(i) - sum_j pair_bounds(i, j)
  double bound_rhs = 0.0;   // S_inf
  double bound_residual = 0.0;  // bound_rhs - tau_tilde_total
  double min_margin = 0.0;
  std::size_t monogamy_violations = 0;
  bool bound_violated = false;
};

TangleReport monogamy_audit(const GroundStateCM& cm);

/// CSV with header i,j,tau_sys,tau_ref,tau_mixed,ppt_zero over all pairs i < j.
void write_pair_csv(std::ostream& os, const GroundStateCM& cm, const CouplingMatrix& w);

}  // namespace qdo
