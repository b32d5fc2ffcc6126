#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qdo/geometry.hpp"

namespace qdo {

/// Evenly spaced grid [min, max] with `steps` points. A single point needs min == max.
struct Range {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  std::vector<double> values() const;
  /// Throws DomainError on steps < 1, steps == 1 with min != max, or max < min.
  void validate(std::string_view name) const;
};

enum class ScanKind { trimer, chain, lattice_curve, three_mode, qubit_trimer, boundary };

std::string_view to_string(ScanKind kind);

enum class BoundaryMode { mb_zero, edi_one, at_zero, d3_eq_neg_d4 };

std::string_view to_string(BoundaryMode mode);
BoundaryMode parse_boundary_mode(std::string_view name);

/// Which assembly a boundary search runs on. Trimers and chains are searched
/// in theta at fixed rho, lattices in rho.
enum class BoundaryTarget { trimer, chain, lattice };

struct ScanSpec {
  ScanKind kind = ScanKind::trimer;
  Range rho{1.8, 4.0, 50};
  Range theta{1.0471975511965976, 3.141592653589793, 50};
  Range kappa{0.001, 0.7, 50};
  Range beta{0.0, 0.7, 50};
  GeometryKind lattice = GeometryKind::square;
  std::vector<int> dims{11, 11};
  int chain_n = 100;
  int k_max = 60;
  int threads = 1;
  /// Largest admissible number of modes (3N).
  std::size_t mode_budget = 4500;

  // Boundary searches only.
  BoundaryMode boundary_mode = BoundaryMode::mb_zero;
  BoundaryTarget boundary_target = BoundaryTarget::trimer;
  double boundary_tol = 1e-10;

  /// Throws DomainError for ranges outside the validity domain of the scan.
  void validate() const;
};

/// Result table: one row per grid point, in grid order. `status` is "ok" or
/// the name of the failure that invalidated the row (values are NaN then).
struct Table {
  struct Row {
    std::vector<double> values;
    std::string status = "ok";
  };

  std::vector<std::string> columns;  // excludes the trailing status column
  std::vector<Row> rows;

  std::size_t column(std::string_view name) const;
  double at(std::size_t row, std::string_view name) const;
  std::size_t ok_rows() const;
};

/// Runs body(i) for i in [0, n) on `threads` workers. The first exception
/// thrown by any worker is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

/// Maps an exception from a grid point to its row status string.
std::string status_of(const std::exception& e);

/// Grid over rho (outer) and theta (inner). Columns: rho, theta, binding_e,
/// delta2, delta3, delta4, delta_mb, tau_tilde, s_inf, s_kmax, edi_12,
/// monogamy_margin_min, bound_residual.
Table run_trimer_scan(const ScanSpec& spec);

/// Zigzag chain of spec.chain_n sites. Columns: rho, theta, binding_e, delta2,
/// delta_mb, delta_mb_norm, edi_central. The central pair is sites
/// ceil(N/2) and ceil(N/2) + 1 counted from one.
Table run_chain_scan(const ScanSpec& spec);

/// Neighbour bookkeeping of a lattice curve; EDI column k belongs to neighbors[k].
struct LatticeCurveMeta {
  std::size_t n_sites = 0;
  std::size_t central = 0;
  std::vector<Neighbor> neighbors;  // unit-rho displacements
};

/// Lattice normalised energy curves over rho. Columns: rho, binding_e, delta2,
/// delta_mb_norm, delta3_norm, delta34_norm, tangle_norm, edi_nn_mean, then
/// edi_s<shell>_<index> for every first- and second-shell neighbour of the
/// central site. Throws TooLarge above spec.mode_budget.
Table run_lattice_curve(const ScanSpec& spec, LatticeCurveMeta* meta = nullptr);

/// Three-mode model V = I + K with K12 = K23 = kappa, K13 = kappa beta.
/// Columns: kappa, beta, tau_sys_12, tau_ref_12, ratio_minus_1, tau_sys_13,
/// tau_sys_23, tau_mixed_12, tau_qubit_1, tau_pair_qubit, tau_ref_qubit, e_qub,
/// delta_qub.
Table run_three_mode_scan(const ScanSpec& spec);

/// Qubit comparator on the trimer grid. Columns: rho, theta, delta2, delta3,
/// delta_mb, e_qub_printed, e_qub, delta_qub, tau_qubit_1, tau_pair_qubit_12.
Table run_qubit_trimer(const ScanSpec& spec);

struct BoundaryResult {
  double fixed = 0.0;  // rho for trimer/chain, unused (NaN) for lattices
  double root = 0.0;
  BoundaryMode mode = BoundaryMode::mb_zero;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;  // final bracket width in the root variable
  double objective_lo = 0.0;
  double objective_hi = 0.0;
};

/// Objective whose sign change defines each boundary, at one point.
/// Trimer/chain: `x` is theta at rho = `fixed`. Lattice: `x` is rho.
double boundary_objective(const ScanSpec& spec, double fixed, double x);

/// Scans the root variable's grid (spec.theta for trimer/chain, spec.rho for
/// lattices), takes the first sign change in grid order and bisects it to
/// spec.boundary_tol. Throws NoBracket when no sign change exists.
BoundaryResult find_boundary(const ScanSpec& spec, double fixed);

/// Convenience: one boundary row per fixed rho value of spec.rho (trimer/chain)
/// or a single row (lattice). Columns: fixed, root, bracket_lo, bracket_hi,
/// residual. Points without a bracket get status "no_bracket".
Table run_boundary_scan(const ScanSpec& spec);

}  // namespace qdo
