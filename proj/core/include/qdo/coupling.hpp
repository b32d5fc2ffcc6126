#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "qdo/geometry.hpp"
#include "qdo/linalg.hpp"

namespace qdo {

/// Scaled dipole coupling W = alpha T (3N x 3N, zero diagonal blocks).
///
/// Generic mode models (e.g. the three-mode kappa-beta Hamiltonian) reuse the
/// type with n_qdo == 0; only n_modes() is meaningful for them.
struct CouplingMatrix {
  Matrix w;
  std::size_t n_qdo = 0;

  std::size_t n_modes() const { return static_cast<std::size_t>(w.rows()); }
};

/// Potential matrix V (I + W in the homogeneous case) plus validity flags.
///
/// The eigendecomposition used to set the flags is kept so the energy and
/// covariance code never diagonalises V a second time.
struct PotentialMatrix {
  Matrix v;
  bool positive_definite = false;
  /// Spectral radius of the scaled coupling is below one.
  bool perturbative = false;
  /// Eigenpairs of V, ascending.
  SymmetricEigen eigen;
  /// Eigenvalues of the scaled coupling (V - I homogeneously), same order as eigen.values.
  Vector coupling_eigenvalues;

  std::size_t n_modes() const { return static_cast<std::size_t>(v.rows()); }
};

/// Per-oscillator parameters of the heterogeneous Hamiltonian.
struct QdoParams {
  double polarizability = 1.0;    // alpha_mu, volume units
  double frequency_ratio = 1.0;   // omega_mu / omega_0
};

/// Dimensionless dipole tensor block (I - 3 r r^T / |r|^2) / |r|^3.
Mat3 dipole_block(const Vec3& separation);

CouplingMatrix build_coupling(const SiteSet& sites);

/// Wraps an explicit symmetric mode-coupling matrix (diagonal must be zero).
CouplingMatrix mode_coupling(Matrix w);

PotentialMatrix build_potential(const CouplingMatrix& w);

/// Heterogeneous potential: diagonal blocks (w_mu/w0)^2 I, off-diagonal blocks
/// (w_mu w_xi / w0^2) sqrt(alpha_mu alpha_xi) T_mu,xi with positions in the
/// length unit of alpha^(1/3).
PotentialMatrix build_potential_general(const SiteSet& sites, std::span<const QdoParams> params);

/// Row-major CSV, 17 significant digits, no header.
void write_matrix_csv(std::ostream& os, const Matrix& m);

}  // namespace qdo
