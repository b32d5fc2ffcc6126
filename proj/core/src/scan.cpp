#include "qdo/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "qdo/coupling.hpp"
#include "qdo/dispersion.hpp"
#include "qdo/entanglement.hpp"
#include "qdo/errors.hpp"
#include "qdo/gaussian_state.hpp"
#include "qdo/qubit.hpp"

namespace qdo {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

Table make_table(std::vector<std::string> columns, std::size_t rows) {
  Table t;
  t.columns = std::move(columns);
  t.rows.resize(rows);
  return t;
}

// Evaluates fn for every row; failures become row statuses with NaN values.
template <typename Fn>
void fill_rows(Table& t, int threads, Fn fn) {
  const std::size_t width = t.columns.size();
  parallel_for(t.rows.size(), threads, [&](std::size_t r) {
    Table::Row& row = t.rows[r];
    row.values.assign(width, nan);
    try {
      fn(r, row);
    } catch (const Error& e) {
      row.status = status_of(e);
    }
  });
}

struct Assembly {
  SiteSet sites;
  CouplingMatrix w;
  ModeSpectrum spec;
};

Assembly assemble(SiteSet sites) {
  Assembly a;
  a.w = build_coupling(sites);
  a.spec = spectrum(build_potential(a.w));
  a.sites = std::move(sites);
  return a;
}

void check_budget(std::size_t modes, std::size_t budget) {
  if (modes > budget) {
    throw TooLarge(std::to_string(modes) + " modes exceed the budget of " + std::to_string(budget));
  }
}

SiteSet lattice_at(const ScanSpec& spec, double rho) {
  return build_lattice(spec.lattice, spec.dims, rho);
}

std::size_t chain_center(int n) { return static_cast<std::size_t>((n + 1) / 2 - 1); }

double mean_nn_edi(const GroundStateCM& cm, const CouplingMatrix& w, std::size_t center,
                   const std::vector<Neighbor>& nbrs) {
  double s = 0.0;
  int count = 0;
  for (const Neighbor& n : nbrs) {
    if (n.shell != 1) continue;
    s += edi(cm, w, center, n.index);
    ++count;
  }
  return count ? s / count : nan;
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(steps, 0)));
  for (int k = 0; k < steps; ++k) {
    out[static_cast<std::size_t>(k)] =
        steps == 1 ? min : (k == steps - 1 ? max : min + (max - min) * k / (steps - 1));
  }
  return out;
}

void Range::validate(std::string_view name) const {
  const std::string n(name);
  if (!std::isfinite(min) || !std::isfinite(max)) throw DomainError(n + " range must be finite");
  if (steps < 1) throw DomainError(n + " range needs at least one step");
  if (steps == 1 && min != max) throw DomainError(n + " range with one step needs min == max");
  if (max < min) throw DomainError(n + " range has max < min");
}

std::string_view to_string(ScanKind kind) {
  switch (kind) {
    case ScanKind::trimer: return "trimer";
    case ScanKind::chain: return "chain";
    case ScanKind::lattice_curve: return "lattice";
    case ScanKind::three_mode: return "three-mode";
    case ScanKind::qubit_trimer: return "qubit-trimer";
    case ScanKind::boundary: return "boundary";
  }
  return "trimer";
}

std::string_view to_string(BoundaryMode mode) {
  switch (mode) {
    case BoundaryMode::mb_zero: return "mb_zero";
    case BoundaryMode::edi_one: return "edi_one";
    case BoundaryMode::at_zero: return "at_zero";
    case BoundaryMode::d3_eq_neg_d4: return "d3_eq_neg_d4";
  }
  return "mb_zero";
}

BoundaryMode parse_boundary_mode(std::string_view name) {
  for (auto m : {BoundaryMode::mb_zero, BoundaryMode::edi_one, BoundaryMode::at_zero,
                 BoundaryMode::d3_eq_neg_d4}) {
    if (to_string(m) == name) return m;
  }
  throw DomainError("unknown boundary mode '" + std::string(name) + "'");
}

void ScanSpec::validate() const {
  if (threads < 1) throw DomainError("threads must be >= 1");
  if (k_max < 2 || k_max > 200) throw DomainError("kmax must lie in [2, 200]");
  const bool uses_theta = kind == ScanKind::trimer || kind == ScanKind::chain ||
                          kind == ScanKind::qubit_trimer ||
                          (kind == ScanKind::boundary && boundary_target != BoundaryTarget::lattice);
  const bool uses_rho = kind != ScanKind::three_mode;
  if (uses_rho) {
    rho.validate("rho");
    if (!(rho.min > 0.0)) throw DomainError("rho must be positive");
  }
  if (uses_theta) {
    theta.validate("theta");
    constexpr double slack = 1e-12;
    if (theta.min < std::numbers::pi / 3.0 - slack || theta.max > std::numbers::pi + slack) {
      throw DomainError("theta must lie in [pi/3, pi]");
    }
  }
  if (kind == ScanKind::three_mode) {
    kappa.validate("kappa");
    beta.validate("beta");
    if (kappa.min <= -1.0 || kappa.max >= 1.0) throw DomainError("kappa must lie in (-1, 1)");
    if (beta.min < 0.0 || beta.max > 1.0) throw DomainError("beta must lie in [0, 1]");
  }
  const bool chain = kind == ScanKind::chain ||
                     (kind == ScanKind::boundary && boundary_target == BoundaryTarget::chain);
  if (chain && chain_n < 3) throw DomainError("chain needs at least 3 sites");
  if (kind == ScanKind::boundary && !(boundary_tol > 0.0)) {
    throw DomainError("boundary tolerance must be positive");
  }
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == name) return c;
  }
  throw DomainError("no column named '" + std::string(name) + "'");
}

double Table::at(std::size_t row, std::string_view name) const {
  return rows.at(row).values.at(column(name));
}

std::size_t Table::ok_rows() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const Row& r) { return r.status == "ok"; }));
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(std::min(workers, n));
  for (std::size_t t = 0; t < std::min(workers, n); ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string status_of(const std::exception& e) {
  if (dynamic_cast<const NotPositiveDefinite*>(&e)) return "not_positive_definite";
  if (dynamic_cast<const SeriesDivergent*>(&e)) return "series_divergent";
  if (dynamic_cast<const UnphysicalState*>(&e)) return "unphysical_state";
  if (dynamic_cast<const DegenerateDenominator*>(&e)) return "degenerate_denominator";
  if (dynamic_cast<const NoBracket*>(&e)) return "no_bracket";
  if (dynamic_cast<const TooLarge*>(&e)) return "too_large";
  if (dynamic_cast<const DomainError*>(&e)) return "domain_error";
  return "error";
}

Table run_trimer_scan(const ScanSpec& spec) {
  const std::vector<double> rhos = spec.rho.values();
  const std::vector<double> thetas = spec.theta.values();
  Table t = make_table({"rho", "theta", "binding_e", "delta2", "delta3", "delta4", "delta_mb",
                        "tau_tilde", "s_inf", "s_kmax", "edi_12", "monogamy_margin_min",
                        "bound_residual"},
                       rhos.size() * thetas.size());
  fill_rows(t, spec.threads, [&](std::size_t r, Table::Row& row) {
    const double rho = rhos[r / thetas.size()];
    const double theta = thetas[r % thetas.size()];
    row.values[0] = rho;
    row.values[1] = theta;
    const Assembly a = assemble(build_trimer(rho, theta));
    const EnergyBreakdown eb = energy_breakdown(a.spec, a.sites, spec.k_max);
    const GroundStateCM cm = ground_state_cm(a.spec);
    const TangleReport rep = monogamy_audit(cm);
    double s_kmax = nan;
    if (!eb.delta.empty()) {
      s_kmax = 0.0;
      for (std::size_t k = 0; k < eb.delta.size(); ++k) s_kmax += static_cast<double>(k + 1) * eb.delta[k];
    }
    row.values[2] = eb.binding_e;
    row.values[3] = eb.delta2;
    row.values[4] = eb.delta3;
    row.values[5] = eb.delta4;
    row.values[6] = eb.delta_mb;
    row.values[7] = rep.tau_tilde_total;
    row.values[8] = eb.s_inf;
    row.values[9] = s_kmax;
    row.values[10] = edi(cm, a.w, 0, 1);
    row.values[11] = rep.min_margin;
    row.values[12] = rep.bound_residual;
    if (rep.bound_violated) row.status = "bound_violated";
    if (rep.monogamy_violations > 0) row.status = "monogamy_violated";
  });
  return t;
}

Table run_chain_scan(const ScanSpec& spec) {
  check_budget(3 * static_cast<std::size_t>(std::max(spec.chain_n, 0)), spec.mode_budget);
  const std::vector<double> rhos = spec.rho.values();
  const std::vector<double> thetas = spec.theta.values();
  const std::size_t c = chain_center(spec.chain_n);
  Table t = make_table({"rho", "theta", "binding_e", "delta2", "delta_mb", "delta_mb_norm",
                        "edi_central"},
                       rhos.size() * thetas.size());
  fill_rows(t, spec.threads, [&](std::size_t r, Table::Row& row) {
    const double rho = rhos[r / thetas.size()];
    const double theta = thetas[r % thetas.size()];
    row.values[0] = rho;
    row.values[1] = theta;
    const Assembly a = assemble(build_chain(spec.chain_n, rho, theta));
    const ManyBody mb = many_body(a.spec, a.sites);
    const double d2 = pairwise_energy(a.sites);
    const GroundStateCM cm = ground_state_cm(a.spec);
    row.values[2] = mb.delta_mb + d2;
    row.values[3] = d2;
    row.values[4] = mb.delta_mb;
    row.values[5] = mb.delta_mb / d2;
    row.values[6] = edi(cm, a.w, c, c + 1);
  });
  return t;
}

Table run_lattice_curve(const ScanSpec& spec, LatticeCurveMeta* meta) {
  const std::vector<double> rhos = spec.rho.values();
  // Geometry at unit spacing fixes the neighbour list for every rho.
  const SiteSet unit = lattice_at(spec, 1.0);
  check_budget(unit.n_modes(), spec.mode_budget);
  const std::size_t center = central_site(unit);
  const std::vector<Neighbor> nbrs = neighbor_shells(unit, center, 2);

  std::vector<std::string> cols{"rho",          "binding_e",    "delta2",      "delta_mb_norm",
                                "delta3_norm",  "delta34_norm", "tangle_norm", "edi_nn_mean"};
  for (const Neighbor& n : nbrs) {
    cols.push_back("edi_s" + std::to_string(n.shell) + "_" + std::to_string(n.index));
  }
  Table t = make_table(std::move(cols), rhos.size());
  fill_rows(t, spec.threads, [&](std::size_t r, Table::Row& row) {
    const double rho = rhos[r];
    row.values[0] = rho;
    const Assembly a = assemble(lattice_at(spec, rho));
    const EnergyBreakdown eb = energy_breakdown(a.spec, a.sites, 2);
    const GroundStateCM cm = ground_state_cm(a.spec);
    const ReducedTangle red = reduced_tangle_total(cm);
    const double d2 = eb.delta2;
    row.values[1] = eb.binding_e;
    row.values[2] = d2;
    row.values[3] = eb.delta_mb / d2;
    row.values[4] = eb.delta3 / d2;
    row.values[5] = (eb.delta3 + eb.delta4) / d2;
    row.values[6] = (red.total - d2) / (2.0 * d2);
    row.values[7] = mean_nn_edi(cm, a.w, center, nbrs);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      row.values[8 + k] = edi(cm, a.w, center, nbrs[k].index);
    }
  });
  if (meta) {
    meta->n_sites = unit.size();
    meta->central = center;
    meta->neighbors = nbrs;
  }
  return t;
}

Table run_three_mode_scan(const ScanSpec& spec) {
  const std::vector<double> kappas = spec.kappa.values();
  const std::vector<double> betas = spec.beta.values();
  Table t = make_table({"kappa", "beta", "tau_sys_12", "tau_ref_12", "ratio_minus_1", "tau_sys_13",
                        "tau_sys_23", "tau_mixed_12", "tau_qubit_1", "tau_pair_qubit",
                        "tau_ref_qubit", "e_qub", "delta_qub"},
                       kappas.size() * betas.size());
  fill_rows(t, spec.threads, [&](std::size_t r, Table::Row& row) {
    const double kappa = kappas[r / betas.size()];
    const double beta = betas[r % betas.size()];
    row.values[0] = kappa;
    row.values[1] = beta;
    Matrix k = Matrix::Zero(3, 3);
    k(0, 1) = k(1, 0) = kappa;
    k(1, 2) = k(2, 1) = kappa;
    k(0, 2) = k(2, 0) = kappa * beta;
    const CouplingMatrix w = mode_coupling(k);
    const ModeSpectrum s = spectrum(build_potential(w));
    const GroundStateCM cm = ground_state_cm(s);
    const double sys = pair_bound(cm, 0, 1);
    const double ref = reference_tangle(kappa);
    row.values[2] = sys;
    row.values[3] = ref;
    row.values[5] = pair_bound(cm, 0, 2);
    row.values[6] = pair_bound(cm, 1, 2);
    row.values[7] = mixed_pair_tangle(reduce_two_mode(cm, 0, 1)).value;

    // The qubit comparator takes the mode couplings unscaled, w_ij = K_ij.
    const QubitGroundState g3 = qubit_ground_state(QubitModel(
        3, {{0, 1, kappa}, {1, 2, kappa}, {0, 2, kappa * beta}}));
    const QubitGroundState g2 = qubit_ground_state(QubitModel(2, {{0, 1, kappa}}));
    const QubitBinding qb = qubit_binding(g3, delta_term(s, 2));
    row.values[8] = qubit_tangle(g3, 0);
    row.values[9] = qubit_pair_tangle(g3, 0, 1);
    row.values[10] = qubit_pair_tangle(g2, 0, 1);
    row.values[11] = qb.e_qub;
    row.values[12] = qb.delta_qub;
    if (!(ref > 0.0)) throw DegenerateDenominator("reference tangle vanishes at kappa = 0");
    row.values[4] = sys / ref - 1.0;
  });
  return t;
}

Table run_qubit_trimer(const ScanSpec& spec) {
  const std::vector<double> rhos = spec.rho.values();
  const std::vector<double> thetas = spec.theta.values();
  Table t = make_table({"rho", "theta", "delta2", "delta3", "delta_mb", "e_qub_printed", "e_qub",
                        "delta_qub", "tau_qubit_1", "tau_pair_qubit_12"},
                       rhos.size() * thetas.size());
  fill_rows(t, spec.threads, [&](std::size_t r, Table::Row& row) {
    const double rho = rhos[r / thetas.size()];
    const double theta = thetas[r % thetas.size()];
    row.values[0] = rho;
    row.values[1] = theta;
    const Assembly a = assemble(build_trimer(rho, theta));
    const ManyBody mb = many_body(a.spec, a.sites);
    const double d2 = pairwise_energy(a.sites);
    const QubitGroundState g = qubit_ground_state(build_qubit_model(a.w));
    const QubitBinding qb = qubit_binding(g, d2);
    row.values[2] = d2;
    row.values[3] = mb.delta3;
    row.values[4] = mb.delta_mb;
    row.values[5] = qb.e_qub_printed;
    row.values[6] = qb.e_qub;
    row.values[7] = qb.delta_qub;
    row.values[8] = qubit_tangle(g, 0);
    // Modes 0 and 3 are the x components of sites 1 and 2.
    row.values[9] = qubit_pair_tangle(g, 0, 3);
  });
  return t;
}

double boundary_objective(const ScanSpec& spec, double fixed, double x) {
  SiteSet sites;
  switch (spec.boundary_target) {
    case BoundaryTarget::trimer: sites = build_trimer(fixed, x); break;
    case BoundaryTarget::chain: sites = build_chain(spec.chain_n, fixed, x); break;
    case BoundaryTarget::lattice: sites = lattice_at(spec, x); break;
  }
  check_budget(sites.n_modes(), spec.mode_budget);

  if (spec.boundary_mode == BoundaryMode::at_zero && sites.size() == 3) {
    // The triplet bracket has the sign of delta_3 and no geometric prefactor.
    return -axilrod_teller_bracket(sites.positions[0], sites.positions[1], sites.positions[2]);
  }
  const Assembly a = assemble(std::move(sites));
  switch (spec.boundary_mode) {
    case BoundaryMode::mb_zero: return binding_energy(a.spec) - pairwise_energy(a.sites);
    case BoundaryMode::at_zero: return delta_term(a.spec, 3);
    case BoundaryMode::d3_eq_neg_d4: return delta_term(a.spec, 3) + delta_term(a.spec, 4);
    case BoundaryMode::edi_one: break;
  }
  const GroundStateCM cm = ground_state_cm(a.spec);
  switch (spec.boundary_target) {
    case BoundaryTarget::trimer: return edi(cm, a.w, 0, 1) - 1.0;
    case BoundaryTarget::chain: {
      const std::size_t c = chain_center(spec.chain_n);
      return edi(cm, a.w, c, c + 1) - 1.0;
    }
    case BoundaryTarget::lattice: {
      const std::size_t center = central_site(a.sites);
      return mean_nn_edi(cm, a.w, center, neighbor_shells(a.sites, center, 1)) - 1.0;
    }
  }
  return nan;
}

BoundaryResult find_boundary(const ScanSpec& spec, double fixed) {
  const bool lattice = spec.boundary_target == BoundaryTarget::lattice;
  const std::vector<double> grid = lattice ? spec.rho.values() : spec.theta.values();
  if (grid.size() < 2) throw DomainError("boundary search needs at least two grid points");
  auto objective = [&](double x) { return boundary_objective(spec, fixed, x); };

  double x0 = grid[0];
  double f0 = objective(x0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double x1 = grid[k];
    const double f1 = objective(x1);
    if (f0 == 0.0 || f0 * f1 < 0.0 || f1 == 0.0) {
      BoundaryResult out;
      out.fixed = lattice ? nan : fixed;
      out.mode = spec.boundary_mode;
      out.bracket_lo = x0;
      out.bracket_hi = x1;
      out.objective_lo = f0;
      out.objective_hi = f1;
      if (f0 == 0.0 || f1 == 0.0) {
        out.root = f0 == 0.0 ? x0 : x1;
        out.residual = 0.0;
        return out;
      }
      double lo = x0, hi = x1, flo = f0;
      while (std::abs(hi - lo) > spec.boundary_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = objective(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.root = 0.5 * (lo + hi);
      out.residual = std::abs(hi - lo);
      return out;
    }
    x0 = x1;
    f0 = f1;
  }
  throw NoBracket("no sign change of " + std::string(to_string(spec.boundary_mode)) +
                  " objective in the scanned range");
}

Table run_boundary_scan(const ScanSpec& spec) {
  const bool lattice = spec.boundary_target == BoundaryTarget::lattice;
  const std::vector<double> fixed = lattice ? std::vector<double>{nan} : spec.rho.values();
  Table t = make_table({"fixed", "root", "bracket_lo", "bracket_hi", "residual"}, fixed.size());
  if (lattice) check_budget(lattice_at(spec, 1.0).n_modes(), spec.mode_budget);
  fill_rows(t, spec.threads, [&](std::size_t r, Table::Row& row) {
    row.values[0] = fixed[r];
    const BoundaryResult b = find_boundary(spec, fixed[r]);
    row.values[1] = b.root;
    row.values[2] = b.bracket_lo;
    row.values[3] = b.bracket_hi;
    row.values[4] = b.residual;
  });
  return t;
}

}  // namespace qdo
