#include "qdo/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdo/errors.hpp"
#include "qdo/tolerances.hpp"

namespace qdo {
namespace {

double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Termination test on the last two orders: odd power sums vanish for spectra
// symmetric about zero (e.g. a dimer), so a single odd term says nothing.
bool tail_converged(const std::vector<double>& delta) {
  const double scale = std::max(delta.front(), 1e-300);
  const std::size_t n = delta.size();
  const double last = std::abs(delta[n - 1]);
  const double prev = n > 1 ? std::abs(delta[n - 2]) : last;
  return std::max(last, prev) < tol::series_convergence * scale;
}

SeriesTerms accumulate(const ModeSpectrum& spec, int k_max, bool stop_early) {
  if (max_abs(spec.w_eigs) >= 1.0) {
    throw SeriesDivergent("series diverges: max |w_i| = " + std::to_string(max_abs(spec.w_eigs)) +
                          " >= 1");
  }
  SeriesTerms out;
  const Vector& w = spec.w_eigs;
  Vector power = w.cwiseProduct(w);
  double coeff = series_coefficient(2);
  for (int k = 2; k <= k_max; ++k) {
    if (k > 2) {
      power = power.cwiseProduct(w);
      coeff *= -static_cast<double>(2 * k - 3) / (2.0 * k);
    }
    out.delta.push_back(coeff * power.sum());
    out.k_max = k;
    if (stop_early && k >= 3 && tail_converged(out.delta)) break;
  }
  out.converged = tail_converged(out.delta);
  return out;
}

}  // namespace

ModeSpectrum spectrum(const PotentialMatrix& v) {
  ModeSpectrum out;
  out.lambda = v.eigen.values;
  out.w_eigs = v.coupling_eigenvalues;
  out.eigvecs = v.eigen.vectors;
  if (out.lambda.size() && out.lambda.minCoeff() <= tol::eigen_floor) {
    throw NotPositiveDefinite("potential matrix is not positive definite: min eigenvalue " +
                              std::to_string(out.lambda.minCoeff()));
  }
  return out;
}

double binding_energy(const ModeSpectrum& spec) {
  if (spec.lambda.size() && spec.lambda.minCoeff() <= tol::eigen_floor) {
    throw NotPositiveDefinite("binding energy needs a positive-definite spectrum");
  }
  // 3N/2 - sum sqrt(lambda)/2 without the large cancellation: sqrt(1 + w) - 1 = w / (1 + sqrt(1 + w)).
  double e = 0.0;
  if (spec.w_eigs.size() == spec.lambda.size()) {
    for (Eigen::Index i = 0; i < spec.lambda.size(); ++i) {
      e -= 0.5 * spec.w_eigs[i] / (1.0 + std::sqrt(spec.lambda[i]));
    }
  } else {
    e = 0.5 * static_cast<double>(spec.n_modes()) - 0.5 * spec.lambda.cwiseSqrt().sum();
  }
  return (e < 0.0 && e > -tol::energy_clamp) ? 0.0 : e;
}

double series_coefficient(int k) {
  if (k < 2) throw DomainError("series order starts at 2");
  // c_2 = 1/16, c_{k+1} / c_k = -(2k - 1) / (2 (k + 1)).
  double c = 1.0 / 16.0;
  for (int j = 2; j < k; ++j) c *= -static_cast<double>(2 * j - 1) / (2.0 * (j + 1));
  return c;
}

double delta_term(const ModeSpectrum& spec, int k) {
  return series_coefficient(k) * spec.w_eigs.array().pow(static_cast<double>(k)).sum();
}

double SeriesTerms::partial_energy(int l) const {
  double s = 0.0;
  for (int k = 2; k <= std::min(l, k_max); ++k) s += at(k);
  return s;
}

double SeriesTerms::partial_weighted(int l) const {
  double s = 0.0;
  for (int k = 2; k <= std::min(l, k_max); ++k) s += (k - 1) * at(k);
  return s;
}

SeriesTerms series_terms(const ModeSpectrum& spec, int k_max) {
  if (k_max < 2 || k_max > tol::series_order_cap) {
    throw DomainError("series order must lie in [2, " + std::to_string(tol::series_order_cap) + "]");
  }
  return accumulate(spec, k_max, false);
}

SeriesTerms series_until_converged(const ModeSpectrum& spec) {
  return accumulate(spec, tol::series_order_cap, true);
}

double pairwise_energy(const SiteSet& sites) {
  double s = 0.0;
  for (std::size_t a = 0; a < sites.size(); ++a) {
    for (std::size_t b = a + 1; b < sites.size(); ++b) {
      const double r2 = (sites.positions[a] - sites.positions[b]).squaredNorm();
      s += 1.0 / (r2 * r2 * r2);
    }
  }
  return 0.75 * s;
}

double axilrod_teller_bracket(const Vec3& r1, const Vec3& r2, const Vec3& r3) {
  const double a2 = (r2 - r3).squaredNorm();  // opposite r1
  const double b2 = (r1 - r3).squaredNorm();  // opposite r2
  const double c2 = (r1 - r2).squaredNorm();  // opposite r3
  const double a = std::sqrt(a2), b = std::sqrt(b2), c = std::sqrt(c2);
  // Law of cosines for the interior angle at each vertex.
  const double cos1 = (b2 + c2 - a2) / (2.0 * b * c);
  const double cos2 = (a2 + c2 - b2) / (2.0 * a * c);
  const double cos3 = (a2 + b2 - c2) / (2.0 * a * b);
  return 1.0 + 3.0 * cos1 * cos2 * cos3;
}

double axilrod_teller(const SiteSet& sites) {
  const auto& p = sites.positions;
  double s = 0.0;
  for (std::size_t mu = 0; mu < p.size(); ++mu) {
    for (std::size_t xi = mu + 1; xi < p.size(); ++xi) {
      const double r_mx = (p[mu] - p[xi]).norm();
      for (std::size_t om = xi + 1; om < p.size(); ++om) {
        const double r_mo = (p[mu] - p[om]).norm();
        const double r_xo = (p[xi] - p[om]).norm();
        const double denom = std::pow(r_mx * r_mo * r_xo, 3);
        s += axilrod_teller_bracket(p[mu], p[xi], p[om]) / denom;
      }
    }
  }
  return -9.0 / 16.0 * s;
}

double axilrod_teller_trace(const CouplingMatrix& w) {
  // tr(W^3) = sum_ij (W^2)_ij W_ji without forming W^3.
  const Matrix w2 = w.w * w.w;
  return -w2.cwiseProduct(w.w.transpose()).sum() / 32.0;
}

double weighted_series_sum(const ModeSpectrum& spec) {
  const auto s = spec.lambda.array().sqrt();
  return 0.25 * (s + s.inverse() - 2.0).sum();
}

ManyBody many_body(const ModeSpectrum& spec, const SiteSet& sites) {
  ManyBody out;
  out.delta_mb = binding_energy(spec) - pairwise_energy(sites);
  out.delta3 = delta_term(spec, 3);
  out.delta4 = delta_term(spec, 4);
  out.s_inf = weighted_series_sum(spec);
  return out;
}

namespace {

EnergyBreakdown breakdown_with(const ModeSpectrum& spec, double delta2, int k_max) {
  EnergyBreakdown out;
  out.binding_e = binding_energy(spec);
  out.delta2 = delta2;
  out.delta3 = delta_term(spec, 3);
  out.delta4 = delta_term(spec, 4);
  out.delta_mb = out.binding_e - delta2;
  out.s_inf = weighted_series_sum(spec);
  if (max_abs(spec.w_eigs) < 1.0) {
    SeriesTerms series = series_terms(spec, k_max);
    out.delta = std::move(series.delta);
    out.k_used = series.k_max;
    out.converged = series.converged;
  }
  return out;
}

}  // namespace

EnergyBreakdown energy_breakdown(const ModeSpectrum& spec, const SiteSet& sites, int k_max) {
  return breakdown_with(spec, pairwise_energy(sites), k_max);
}

EnergyBreakdown energy_breakdown(const ModeSpectrum& spec, int k_max) {
  return breakdown_with(spec, delta_term(spec, 2), k_max);
}

}  // namespace qdo
