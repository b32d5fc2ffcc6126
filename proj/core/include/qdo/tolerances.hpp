#pragma once

// Numerical thresholds shared across modules. Every tolerance the toolkit
// applies lives here so tests and tools can refer to the same values.

namespace qdo::tol {

/// Separations below this are treated as coincident sites.
inline constexpr double coincident_site = 1e-9;
/// Relative tolerance for the nearest-neighbour distance of generated geometries.
inline constexpr double geometry_rho = 1e-12;

/// Smallest admissible eigenvalue of the potential matrix.
inline constexpr double eigen_floor = 1e-12;
/// W eigenvalues must exceed -1 + this margin for V to count as positive definite.
inline constexpr double positive_definite_margin = 1e-12;

/// Binding energies in (-energy_clamp, 0) are snapped to zero.
inline constexpr double energy_clamp = 1e-12;

/// Series is converged when |delta_kmax| < series_convergence * delta_2.
inline constexpr double series_convergence = 1e-14;
/// Hard cap on the perturbative order.
inline constexpr int series_order_cap = 200;

/// Local purity products below 1 by at most this amount are roundoff.
inline constexpr double local_purity = 1e-12;
/// Slack for the two-mode standard-form physicality checks.
inline constexpr double standard_form = 1e-9;
/// eta* at or below this selects the degenerate branch of the mixed-state tangle.
inline constexpr double degenerate_eta = 1e-14;
/// Dense grid resolution for the phi minimisation.
inline constexpr int phi_grid_points = 3600;
/// Golden-section refinement stops when the bracket is narrower than this.
inline constexpr double phi_refine = 1e-10;

/// Reference tangles below this are treated as zero in the EDI denominator.
inline constexpr double edi_denominator = 1e-300;

/// Default bisection tolerance in the root variable.
inline constexpr double boundary_root = 1e-6;

/// Eigenvalues of two-qubit products with magnitude below this are snapped to 0.
inline constexpr double qubit_clamp = 1e-12;
/// Residual target for the iterative qubit ground-state solver.
inline constexpr double qubit_residual = 1e-9;

}  // namespace qdo::tol
