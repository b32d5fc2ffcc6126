#include "qdo/qubit.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <cmath>
#include <random>
#include <string>

#include "qdo/errors.hpp"
#include "qdo/tolerances.hpp"

namespace qdo {

QubitModel::QubitModel(int d, std::vector<QubitCoupling> couplings)
    : d_(d), couplings_(std::move(couplings)) {
  if (d < 1) throw DomainError("qubit model needs at least one qubit");
  if (d > max_qubits) {
    throw TooLarge("qubit model with " + std::to_string(d) + " qubits exceeds the limit of " +
                   std::to_string(max_qubits));
  }
  for (const QubitCoupling& c : couplings_) {
    if (c.i < 0 || c.j < 0 || c.i >= d || c.j >= d || c.i == c.j) {
      throw DomainError("invalid qubit coupling indices");
    }
  }
}

double QubitModel::diagonal(std::size_t s) const {
  // Each qubit contributes 1/2 in level 0 and 3/2 in level 1.
  const int excited = std::popcount(s);
  return 0.5 * d_ + excited;
}

void QubitModel::apply(const Vector& x, Vector& y) const {
  const std::size_t dim = dimension();
  y.resize(x.size());
  for (std::size_t s = 0; s < dim; ++s) {
    y[static_cast<Eigen::Index>(s)] = diagonal(s) * x[static_cast<Eigen::Index>(s)];
  }
  for (const QubitCoupling& c : couplings_) {
    const std::size_t mask = (std::size_t{1} << c.i) | (std::size_t{1} << c.j);
    for (std::size_t s = 0; s < dim; ++s) {
      y[static_cast<Eigen::Index>(s)] += c.w * x[static_cast<Eigen::Index>(s ^ mask)];
    }
  }
}

Matrix QubitModel::hamiltonian() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  Matrix h = Matrix::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s) h(s, s) = diagonal(static_cast<std::size_t>(s));
  for (const QubitCoupling& c : couplings_) {
    const auto mask = static_cast<Eigen::Index>((1u << c.i) | (1u << c.j));
    for (Eigen::Index s = 0; s < dim; ++s) h(s ^ mask, s) += c.w;
  }
  return h;
}

QubitModel build_qubit_model(const CouplingMatrix& w, double scale) {
  const auto d = static_cast<int>(w.n_modes());
  if (d > max_qubits) {
    throw TooLarge("qubit truncation of " + std::to_string(d) + " modes exceeds the limit of " +
                   std::to_string(max_qubits));
  }
  std::vector<QubitCoupling> couplings;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double wij = w.w(i, j);
      if (wij != 0.0) couplings.push_back({i, j, scale * wij});
    }
  }
  return QubitModel(d, std::move(couplings));
}

namespace {

QubitGroundState dense_ground_state(const QubitModel& model) {
  const SymmetricEigen eig = symmetric_eigen(model.hamiltonian());
  QubitGroundState g;
  g.qubits = model.qubits();
  g.energy = eig.values[0];
  g.state = eig.vectors.col(0);
  g.state.normalize();
  return g;
}

// Restarted Lanczos with full reorthogonalisation for the lowest eigenpair.
QubitGroundState lanczos_ground_state(const QubitModel& model) {
  const auto dim = static_cast<Eigen::Index>(model.dimension());
  const int krylov = 80;
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal;
  Vector start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) start[i] = normal(rng);
  start.normalize();

  QubitGroundState g;
  g.qubits = model.qubits();
  Vector hx(dim);
  for (int restart = 0; restart < 200; ++restart) {
    Matrix basis(dim, krylov);
    Vector alpha(krylov), beta(krylov);
    basis.col(0) = start;
    int m = 0;
    for (; m < krylov; ++m) {
      model.apply(basis.col(m), hx);
      alpha[m] = basis.col(m).dot(hx);
      for (int pass = 0; pass < 2; ++pass) {
        hx -= basis.leftCols(m + 1) * (basis.leftCols(m + 1).transpose() * hx);
      }
      beta[m] = hx.norm();
      if (m + 1 == krylov || beta[m] < 1e-14) {
        ++m;
        break;
      }
      basis.col(m + 1) = hx / beta[m];
    }
    Matrix tri = Matrix::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      tri(k, k) = alpha[k];
      if (k + 1 < m) tri(k, k + 1) = tri(k + 1, k) = beta[k];
    }
    const SymmetricEigen small = symmetric_eigen(tri);
    g.energy = small.values[0];
    g.state = basis.leftCols(m) * small.vectors.col(0);
    g.state.normalize();
    model.apply(g.state, hx);
    if ((hx - g.energy * g.state).norm() < tol::qubit_residual) return g;
    start = g.state;
  }
  throw Error("Lanczos ground-state solver did not converge");
}

}  // namespace

QubitGroundState qubit_ground_state(const QubitModel& model, QubitSolver solver) {
  if (solver == QubitSolver::automatic) {
    solver = model.qubits() <= dense_qubit_limit ? QubitSolver::dense : QubitSolver::lanczos;
  }
  return solver == QubitSolver::dense ? dense_ground_state(model) : lanczos_ground_state(model);
}

QubitBinding qubit_binding(const QubitGroundState& ground, double delta2) {
  const double d = ground.qubits;
  QubitBinding out;
  out.ground_energy = ground.energy;
  out.e_qub_printed = 0.5 * (d - ground.energy);
  out.printed_baseline = 0.25 * d;
  out.e_qub = 0.5 * d - ground.energy;
  out.delta_qub = out.e_qub - delta2;
  return out;
}

QubitBinding qubit_binding(const QubitModel& model, double delta2) {
  return qubit_binding(qubit_ground_state(model), delta2);
}

Eigen::Matrix2d reduced_density(const QubitGroundState& g, int i) {
  if (i < 0 || i >= g.qubits) throw DomainError("qubit index out of range");
  const std::size_t bit = std::size_t{1} << i;
  Eigen::Matrix2d rho = Eigen::Matrix2d::Zero();
  const auto dim = static_cast<std::size_t>(g.state.size());
  for (std::size_t s = 0; s < dim; ++s) {
    if (s & bit) continue;
    const double a0 = g.state[static_cast<Eigen::Index>(s)];
    const double a1 = g.state[static_cast<Eigen::Index>(s | bit)];
    rho(0, 0) += a0 * a0;
    rho(1, 1) += a1 * a1;
    rho(0, 1) += a0 * a1;
  }
  rho(1, 0) = rho(0, 1);
  return rho;
}

Eigen::Matrix4d reduced_density(const QubitGroundState& g, int i, int j) {
  if (i < 0 || j < 0 || i >= g.qubits || j >= g.qubits || i == j) {
    throw DomainError("invalid qubit pair");
  }
  const std::size_t bi = std::size_t{1} << i;
  const std::size_t bj = std::size_t{1} << j;
  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  const auto dim = static_cast<std::size_t>(g.state.size());
  for (std::size_t s = 0; s < dim; ++s) {
    if (s & (bi | bj)) continue;
    double amp[4];
    for (int k = 0; k < 4; ++k) {
      const std::size_t t = s | ((k & 1) ? bi : 0) | ((k & 2) ? bj : 0);
      amp[k] = g.state[static_cast<Eigen::Index>(t)];
    }
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) rho(r, c) += amp[r] * amp[c];
    }
  }
  return rho;
}

double qubit_tangle(const QubitGroundState& g, int i) {
  return std::clamp(4.0 * reduced_density(g, i).determinant(), 0.0, 1.0);
}

double wootters_tangle(const Eigen::Matrix4d& rho) {
  // sigma_y (x) sigma_y is real: anti-diagonal (-1, 1, 1, -1).
  Eigen::Matrix4d yy = Eigen::Matrix4d::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4d flipped = yy * rho * yy;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> rho_eig(rho);
  Eigen::Vector4d root = rho_eig.eigenvalues();
  for (int k = 0; k < 4; ++k) root[k] = std::sqrt(std::max(root[k], 0.0));
  const Eigen::Matrix4d sqrt_rho =
      rho_eig.eigenvectors() * root.asDiagonal() * rho_eig.eigenvectors().transpose();
  Eigen::Matrix4d prod = sqrt_rho * flipped * sqrt_rho;
  prod = 0.5 * (prod + prod.transpose()).eval();

  Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(prod).eigenvalues();
  std::array<double, 4> lam{};
  for (int k = 0; k < 4; ++k) {
    double v = ev[k];
    // The square root amplifies roundoff: 1e-17 would become 3e-9.
    if (std::abs(v) < tol::qubit_clamp) v = 0.0;
    lam[static_cast<std::size_t>(k)] = std::sqrt(std::max(v, 0.0));
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  const double c = std::max(lam[0] - lam[1] - lam[2] - lam[3], 0.0);
  return c * c;
}

double qubit_pair_tangle(const QubitGroundState& g, int i, int j) {
  return wootters_tangle(reduced_density(g, i, j));
}

}  // namespace qdo
