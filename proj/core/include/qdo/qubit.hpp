#pragma once

#include <cstddef>
#include <vector>

#include "qdo/coupling.hpp"
#include "qdo/linalg.hpp"

namespace qdo {

/// Largest qubit count accepted by the exact ground-state solvers.
inline constexpr int max_qubits = 14;
/// Up to this many qubits the ground state comes from a dense eigendecomposition.
inline constexpr int dense_qubit_limit = 10;

struct QubitCoupling {
  int i;
  int j;
  double w;
};

/// Two-level truncation: H = (1/2) sum_i (2 - sigma_z^i) + sum_{i<j} w_ij sigma_x^i sigma_x^j.
///
/// Qubit i is bit i of the computational-basis index (qubit 0 least significant);
/// bit value 0 is the oscillator ground level.
class QubitModel {
 public:
  /// Throws TooLarge above max_qubits and DomainError on bad indices.
  QubitModel(int d, std::vector<QubitCoupling> couplings);

  int qubits() const { return d_; }
  std::size_t dimension() const { return std::size_t{1} << d_; }
  const std::vector<QubitCoupling>& couplings() const { return couplings_; }

  /// Diagonal entry (1/2) sum_i (2 - z_i) for basis state s.
  double diagonal(std::size_t s) const;
  /// y = H x, matrix-free.
  void apply(const Vector& x, Vector& y) const;
  /// Dense Hamiltonian (dimension() squared doubles).
  Matrix hamiltonian() const;

 private:
  int d_;
  std::vector<QubitCoupling> couplings_;
};

/// Matrix element of chi = (a + a^dag)/sqrt(2) between the two lowest levels.
/// Truncating chi_i chi_j gives sigma_x^i sigma_x^j / 2, hence w_ij = W_ij / 2.
inline constexpr double fock_truncation_scale = 0.5;

/// Qubit couplings w_ij = scale * W_ij for i < j.
QubitModel build_qubit_model(const CouplingMatrix& w, double scale = fock_truncation_scale);

struct QubitGroundState {
  double energy = 0.0;
  Vector state;  // real, unit norm
  int qubits = 0;
};

enum class QubitSolver { automatic, dense, lanczos };

/// Lowest eigenpair. `automatic` uses the dense solver up to dense_qubit_limit
/// qubits and restarted Lanczos beyond.
QubitGroundState qubit_ground_state(const QubitModel& model,
                                    QubitSolver solver = QubitSolver::automatic);

struct QubitBinding {
  double ground_energy = 0.0;
  /// (1/2)(d - E0), evaluated literally; equals d/4 for an uncoupled model.
  double e_qub_printed = 0.0;
  /// Offset of the literal expression at zero coupling (d/4).
  double printed_baseline = 0.0;
  /// Binding relative to the uncoupled ground energy, d/2 - E0 (zero at w = 0).
  double e_qub = 0.0;
  /// e_qub - delta_2 of the source assembly.
  double delta_qub = 0.0;
};

QubitBinding qubit_binding(const QubitModel& model, double delta2);
QubitBinding qubit_binding(const QubitGroundState& ground, double delta2);

/// 2x2 reduced density matrix of qubit i.
Eigen::Matrix2d reduced_density(const QubitGroundState& g, int i);
/// 4x4 reduced density matrix of qubits (i, j); basis index bit_i + 2 bit_j.
Eigen::Matrix4d reduced_density(const QubitGroundState& g, int i, int j);

/// One-to-rest tangle 4 det(rho_i).
double qubit_tangle(const QubitGroundState& g, int i);

/// Wootters pairwise tangle [max(l1 - l2 - l3 - l4, 0)]^2.
double qubit_pair_tangle(const QubitGroundState& g, int i, int j);
/// Same from an explicit real two-qubit density matrix.
double wootters_tangle(const Eigen::Matrix4d& rho);

}  // namespace qdo
