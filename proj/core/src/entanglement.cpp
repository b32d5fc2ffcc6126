#include "qdo/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "qdo/errors.hpp"
#include "qdo/tolerances.hpp"

namespace qdo {

double tangle_from_local_product(double u) {
  u = std::max(u, 1.0);
  const double norm = std::sqrt(u) + std::sqrt(u - 1.0);
  return 0.25 * (norm - 1.0) * (norm - 1.0);
}

double mode_tangle(const GroundStateCM& cm, std::size_t i) {
  return tangle_from_local_product(cm.local_product(i));
}

double f_bound(double x) {
  if (!(x > 0.0)) return 0.0;
  const double t = std::sqrt(x) + std::sqrt(x + 1.0) - 1.0;
  return 0.25 * t * t;
}

double g_reduce(double x) {
  if (!(x > 0.0)) return 0.0;
  const double s = std::sqrt(x);
  const double num = 1.0 + s;
  const double den = 1.0 + 2.0 * s;
  return x * num * num / (den * den);
}

double pair_bound(const GroundStateCM& cm, std::size_t i, std::size_t j) {
  return f_bound(-cm.x(i, j) * cm.p(i, j));
}

double reference_tangle(double w) {
  const double aw = std::abs(w);
  if (aw >= 1.0) {
    throw SeriesDivergent("reference tangle undefined for |w| = " + std::to_string(aw) + " >= 1");
  }
  if (aw == 0.0) return 0.0;
  const double ratio = std::sqrt(std::sqrt(1.0 + aw) / std::sqrt(1.0 - aw));
  return 0.25 * (ratio - 1.0) * (ratio - 1.0);
}

double edi(const GroundStateCM& cm, const CouplingMatrix& w, std::size_t mu, std::size_t xi) {
  if (mu == xi) throw DomainError("EDI needs two distinct oscillators");
  if (3 * std::max(mu, xi) + 2 >= cm.n_modes()) throw DomainError("oscillator index out of range");
  double sys = 0.0;
  double ref = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      const std::size_t i = 3 * mu + a;
      const std::size_t j = 3 * xi + b;
      sys += pair_bound(cm, i, j);
      ref += reference_tangle(w.w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
  if (ref < tol::edi_denominator) {
    throw DegenerateDenominator("oscillators " + std::to_string(mu) + " and " + std::to_string(xi) +
                                " share no reference tangle");
  }
  return sys / ref;
}

ReducedTangle reduced_tangle_total(const GroundStateCM& cm) {
  ReducedTangle out;
  out.per_mode.resize(static_cast<Eigen::Index>(cm.n_modes()));
  for (std::size_t i = 0; i < cm.n_modes(); ++i) {
    out.per_mode[static_cast<Eigen::Index>(i)] = g_reduce(mode_tangle(cm, i));
  }
  out.total = out.per_mode.sum();
  return out;
}

double weighted_series_sum(const GroundStateCM& cm) {
  const double n = static_cast<double>(cm.n_modes());
  return 0.25 * (cm.x_block.trace() + cm.p_block.trace() - 2.0 * n);
}

namespace {

struct MFunction {
  double xi_minus;
  double sqrt_eta;
  double h2_const;
  double h2_cos;  // coefficient of cos(phi), already divided by sqrt(eta*)
  double h2_sin;

  double operator()(double phi) const {
    const double h1 = xi_minus + sqrt_eta * std::cos(phi);
    const double h2 = h2_const - h2_cos * std::cos(phi) + h2_sin * std::sin(phi);
    if (!(h2 > 0.0)) return std::numeric_limits<double>::infinity();
    return h1 * h1 / h2;
  }
};

// Golden-section minimisation of fn on [lo, hi].
double golden_section(const MFunction& fn, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = fn(c);
  double fd = fn(d);
  while (hi - lo > tol::phi_refine) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = fn(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = fn(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MixedPairTangle mixed_pair_tangle(const TwoModeStandardForm& sf) {
  MixedPairTangle out;
  const double a = sf.a, b = sf.b, cp = sf.c_plus, cm = sf.c_minus;
  if (cp * cm >= 0.0) {
    out.ppt_zero = true;
    return out;
  }
  const double ab = a * b;
  const double det_minus = ab - cm * cm;
  const double sum_sq = a * a + b * b;
  const double xi_plus = cp * det_minus + cm;
  const double xi_minus = cp * det_minus - cm;
  const double eta = (a - b * det_minus) * (b - a * det_minus);
  const double zeta = 2.0 * ab * cm * cm * cm + sum_sq * cp * cm * cm +
                      (sum_sq - 2.0 * a * a * b * b) * cm - ab * (sum_sq - 2.0) * cp;
  const double h2_const = 2.0 * det_minus * (sum_sq + 2.0 * cp * cm);

  if (eta <= tol::degenerate_eta) {
    out.degenerate_branch = true;
    const MFunction fn{xi_minus, 0.0, h2_const, 0.0, 0.0};
    out.m_min = std::min(fn(0.0), fn(std::numbers::pi));
    out.phi_min = 0.0;
    out.value = f_bound(out.m_min);
    return out;
  }

  const double sqrt_eta = std::sqrt(eta);
  const double sine_arg = 1.0 - xi_plus * xi_plus / eta;
  if (sine_arg < 0.0) out.clamped_sine = true;
  const MFunction fn{xi_minus, sqrt_eta, h2_const, zeta / sqrt_eta,
                     (a * a - b * b) * std::sqrt(std::max(sine_arg, 0.0))};

  const int n = tol::phi_grid_points;
  const double step = 2.0 * std::numbers::pi / n;
  int best = 0;
  double best_m = fn(0.0);
  for (int k = 1; k < n; ++k) {
    const double m = fn(k * step);
    if (m < best_m) {
      best_m = m;
      best = k;
    }
  }
  if (!std::isfinite(best_m)) {
    throw UnphysicalState("mixed-state tangle: h2(phi) is non-positive on the whole grid");
  }
  const double phi = golden_section(fn, (best - 1) * step, (best + 1) * step);
  const double refined = fn(phi);
  if (refined < best_m) {
    out.m_min = refined;
    out.phi_min = std::fmod(phi + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  } else {
    out.m_min = best_m;
    out.phi_min = best * step;
  }
  out.value = f_bound(out.m_min);
  return out;
}

TangleReport monogamy_audit(const GroundStateCM& cm) {
  const auto n = static_cast<Eigen::Index>(cm.n_modes());
  TangleReport r;
  r.tau_mode.resize(n);
  r.reduced.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r.tau_mode[i] = mode_tangle(cm, static_cast<std::size_t>(i));
    r.reduced[i] = g_reduce(r.tau_mode[i]);
  }
  r.tau_tilde_total = r.reduced.sum();

  const Matrix products = cm.x_block.cwiseProduct(cm.p_block);
  r.pair_bounds = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = f_bound(-products(i, j));
      r.pair_bounds(i, j) = v;
      r.pair_bounds(j, i) = v;
    }
  }
  r.monogamy_margins = r.tau_mode - r.pair_bounds.rowwise().sum();
  r.min_margin = n ? r.monogamy_margins.minCoeff() : 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r.monogamy_margins[i] < -1e-10) ++r.monogamy_violations;
  }
  r.bound_rhs = weighted_series_sum(cm);
  r.bound_residual = r.bound_rhs - r.tau_tilde_total;
  r.bound_violated = r.bound_residual < -1e-10;
  return r;
}

void write_pair_csv(std::ostream& os, const GroundStateCM& cm, const CouplingMatrix& w) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17) << "i,j,tau_sys,tau_ref,tau_mixed,ppt_zero\n";
  for (std::size_t i = 0; i < cm.n_modes(); ++i) {
    for (std::size_t j = i + 1; j < cm.n_modes(); ++j) {
      const double wij = w.w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      const MixedPairTangle mixed = mixed_pair_tangle(reduce_two_mode(cm, i, j));
      os << i << ',' << j << ',' << pair_bound(cm, i, j) << ','
         << (std::abs(wij) < 1.0 ? reference_tangle(wij) : std::nan("")) << ',' << mixed.value
         << ',' << (mixed.ppt_zero ? 1 : 0) << '\n';
    }
  }
  os.flags(flags);
  os.precision(prec);
}

}  // namespace qdo
