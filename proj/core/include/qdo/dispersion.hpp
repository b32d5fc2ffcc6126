#pragma once

#include <cstddef>
#include <vector>

#include "qdo/coupling.hpp"
#include "qdo/geometry.hpp"
#include "qdo/linalg.hpp"

namespace qdo {

/// Normal-mode spectrum of a positive-definite potential matrix.
struct ModeSpectrum {
  Vector lambda;   // eigenvalues of V, ascending
  Vector w_eigs;   // matching eigenvalues of the scaled coupling
  Matrix eigvecs;  // V = O diag(lambda) O^T

  std::size_t n_modes() const { return static_cast<std::size_t>(lambda.size()); }
};

/// Throws NotPositiveDefinite if any eigenvalue is at or below the floor.
ModeSpectrum spectrum(const PotentialMatrix& v);

/// 3N/2 - (1/2) sum sqrt(lambda_i), in units of hbar omega.
double binding_energy(const ModeSpectrum& spec);

/// Coefficient c_k in delta_k = c_k sum_i w_i^k:
/// c_k = (-1)^k (2k-3)!! / (2^(k+1) k!).
double series_coefficient(int k);

/// delta_k from eigenvalue power sums. Defined for any spectrum; only summable
/// when max |w_i| < 1.
double delta_term(const ModeSpectrum& spec, int k);

struct SeriesTerms {
  std::vector<double> delta;  // delta[0] = delta_2, ..., delta.back() = delta_{k_max}
  int k_max = 2;
  bool converged = false;

  double at(int k) const { return delta.at(static_cast<std::size_t>(k - 2)); }
  /// sum_{k=2}^{l} delta_k
  double partial_energy(int l) const;
  /// S_l = sum_{k=2}^{l} (k-1) delta_k
  double partial_weighted(int l) const;
};

/// delta_2 .. delta_{k_max}. Throws SeriesDivergent when max |w_i| >= 1 and
/// DomainError when k_max is outside [2, series_order_cap].
SeriesTerms series_terms(const ModeSpectrum& spec, int k_max);

/// Smallest order whose term meets the convergence criterion, capped.
SeriesTerms series_until_converged(const ModeSpectrum& spec);

/// Pairwise-additive energy (3/4) sum_{mu>xi} R^-6.
double pairwise_energy(const SiteSet& sites);

/// Axilrod-Teller term as a sum over triplets (zero for fewer than three sites).
double axilrod_teller(const SiteSet& sites);

/// Axilrod-Teller term from the coupling, -(1/32) tr(W^3).
double axilrod_teller_trace(const CouplingMatrix& w);

/// Triplet bracket 1 + 3 cos(a) cos(b) cos(c) of the interior angles of a triangle.
double axilrod_teller_bracket(const Vec3& r1, const Vec3& r2, const Vec3& r3);

/// S_inf = sum_{k>=2} (k-1) delta_k = (1/4) sum_i (sqrt(lambda_i) + 1/sqrt(lambda_i) - 2).
double weighted_series_sum(const ModeSpectrum& spec);

struct ManyBody {
  double delta_mb = 0.0;
  double delta3 = 0.0;
  double delta4 = 0.0;
  double s_inf = 0.0;
};

/// delta_MB = E - delta_2 (non-perturbative), with delta_3, delta_4 from power
/// sums and the closed-form S_inf.
ManyBody many_body(const ModeSpectrum& spec, const SiteSet& sites);

struct EnergyBreakdown {
  double binding_e = 0.0;
  std::vector<double> delta;  // delta_2 .. delta_{k_used}
  double delta2 = 0.0;
  double delta3 = 0.0;
  double delta4 = 0.0;
  double delta_mb = 0.0;
  double s_inf = 0.0;
  int k_used = 0;
  bool converged = false;
};

/// Full energy analysis. The series is populated only in the perturbative
/// regime; delta_2..4 are always filled from power sums.
EnergyBreakdown energy_breakdown(const ModeSpectrum& spec, const SiteSet& sites, int k_max);

/// Same for a generic mode model; delta_2 comes from the spectrum, tr(W^2)/16.
EnergyBreakdown energy_breakdown(const ModeSpectrum& spec, int k_max);

}  // namespace qdo
