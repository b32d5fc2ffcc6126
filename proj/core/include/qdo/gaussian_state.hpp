#pragma once

#include <cstddef>

#include "qdo/coupling.hpp"
#include "qdo/dispersion.hpp"
#include "qdo/linalg.hpp"

namespace qdo {

/// Ground-state covariance matrix gamma_0 = V^-1/2 (+) V^1/2.
struct GroundStateCM {
  Matrix x_block;  // <chi_i chi_j>
  Matrix p_block;  // <P_i P_j>

  std::size_t n_modes() const { return static_cast<std::size_t>(x_block.rows()); }
  double x(std::size_t i, std::size_t j) const { return x_block(idx(i), idx(j)); }
  double p(std::size_t i, std::size_t j) const { return p_block(idx(i), idx(j)); }
  /// <chi_i^2><P_i^2>, the local purity product of mode i.
  double local_product(std::size_t i) const { return x(i, i) * p(i, i); }

 private:
  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }
};

/// Throws NotPositiveDefinite when V has an eigenvalue at or below the floor.
GroundStateCM ground_state_cm(const PotentialMatrix& v);
GroundStateCM ground_state_cm(const ModeSpectrum& spec);

/// Symplectic eigenvalues of the quadratic Hamiltonian (1/2)(chi^T A chi + P^T B P).
///
/// Computed from the (non-symmetric) product A B, whose eigenvalues are the
/// squared symplectic eigenvalues. Independent of the symmetric solver used
/// elsewhere. Returned ascending.
Vector symplectic_spectrum(const Matrix& position_block, const Matrix& momentum_block);

/// Symplectic spectrum of the oscillator Hamiltonian (A = V, B = I).
Vector symplectic_spectrum(const PotentialMatrix& v);

/// Same quantity from the full 2n x 2n Williamson problem: the eigenvalues of
/// sigma H are +-i epsilon. Slower; used to cross-check on small systems.
Vector symplectic_spectrum_full(const Matrix& hamiltonian);

/// Two-mode standard form (a, b, c+, c-) with c+ >= |c-|.
struct TwoModeStandardForm {
  double a = 1.0;
  double b = 1.0;
  double c_plus = 0.0;
  double c_minus = 0.0;
};

/// Standard form of the reduced state of modes i and j. Throws DomainError
/// for i == j and UnphysicalState when the invariants fail.
TwoModeStandardForm reduce_two_mode(const GroundStateCM& cm, std::size_t i, std::size_t j);

/// Standard form from the four local entries and the two correlations of a
/// two-mode block with no chi-P cross terms.
TwoModeStandardForm standard_form(double xi, double xj, double xij, double pi, double pj, double pij);

}  // namespace qdo
