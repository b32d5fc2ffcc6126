#include "qdo/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdo/errors.hpp"
#include "qdo/tolerances.hpp"

namespace qdo {
namespace {

GroundStateCM cm_from(const SymmetricEigen& eig) {
  if (eig.values.size() && eig.values.minCoeff() <= tol::eigen_floor) {
    throw NotPositiveDefinite("covariance matrix needs a positive-definite potential, min eigenvalue " +
                              std::to_string(eig.values.minCoeff()));
  }
  GroundStateCM cm;
  cm.x_block = spectral_function(eig, [](double l) { return 1.0 / std::sqrt(l); });
  cm.p_block = spectral_function(eig, [](double l) { return std::sqrt(l); });
  return cm;
}

}  // namespace

GroundStateCM ground_state_cm(const PotentialMatrix& v) { return cm_from(v.eigen); }

GroundStateCM ground_state_cm(const ModeSpectrum& spec) {
  return cm_from(SymmetricEigen{spec.lambda, spec.eigvecs});
}

Vector symplectic_spectrum(const Matrix& position_block, const Matrix& momentum_block) {
  if (position_block.rows() != momentum_block.rows()) {
    throw DomainError("position and momentum blocks differ in size");
  }
  const Matrix product = position_block * momentum_block;
  Eigen::EigenSolver<Matrix> solver(product, false);
  const Eigen::VectorXcd ev = solver.eigenvalues();
  Vector out(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i].real() <= tol::eigen_floor) {
      throw NotPositiveDefinite("Hamiltonian matrix is not positive definite");
    }
    out[i] = std::sqrt(ev[i].real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Vector symplectic_spectrum(const PotentialMatrix& v) {
  return symplectic_spectrum(v.v, Matrix::Identity(v.v.rows(), v.v.cols()));
}

Vector symplectic_spectrum_full(const Matrix& hamiltonian) {
  const Eigen::Index two_n = hamiltonian.rows();
  if (two_n % 2 != 0 || hamiltonian.cols() != two_n) {
    throw DomainError("Hamiltonian matrix must be square with even dimension");
  }
  const Eigen::Index n = two_n / 2;
  Matrix sigma = Matrix::Zero(two_n, two_n);
  sigma.topRightCorner(n, n).setIdentity();
  sigma.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  Eigen::EigenSolver<Matrix> solver(sigma * hamiltonian, false);
  std::vector<double> positive;
  for (const auto& z : solver.eigenvalues()) {
    if (z.imag() > 0.0) positive.push_back(z.imag());
  }
  if (static_cast<Eigen::Index>(positive.size()) != n) {
    throw NotPositiveDefinite("Williamson spectrum is not purely imaginary");
  }
  std::sort(positive.begin(), positive.end());
  return Eigen::Map<Vector>(positive.data(), n);
}

TwoModeStandardForm standard_form(double xi, double xj, double xij, double pi, double pj, double pij) {
  TwoModeStandardForm sf;
  sf.a = std::sqrt(xi * pi);
  sf.b = std::sqrt(xj * pj);
  const double ab = sf.a * sf.b;
  const double prod = xij * pij;                           // c+ c-
  const double det = (xi * xj - xij * xij) * (pi * pj - pij * pij);  // (ab - c+^2)(ab - c-^2)
  // det = (ab)^2 - ab (c+^2 + c-^2) + (c+ c-)^2
  const double sum_sq = (ab * ab + prod * prod - det) / ab;
  double disc = sum_sq * sum_sq - 4.0 * prod * prod;
  if (disc < -tol::standard_form) {
    throw UnphysicalState("two-mode block has no real standard form (discriminant " +
                          std::to_string(disc) + ")");
  }
  disc = std::max(disc, 0.0);
  const double root = std::sqrt(disc);
  const double cp2 = 0.5 * (sum_sq + root);
  const double cm2 = std::max(0.5 * (sum_sq - root), 0.0);
  sf.c_plus = std::sqrt(std::max(cp2, 0.0));
  const double cm_abs = std::sqrt(cm2);
  sf.c_minus = prod < 0.0 ? -cm_abs : cm_abs;
  if (prod == 0.0) sf.c_minus = 0.0;

  const double slack = tol::standard_form;
  // Local purity, positive blocks and det(X) det(P) >= 1. The blocks need not
  // reach 1 individually: a pure pair has exactly (ab - c+^2)(ab - c-^2) = 1.
  if (sf.a < 1.0 - slack || sf.b < 1.0 - slack || !(ab - cp2 > 0.0) || !(ab - cm2 > 0.0) ||
      det < 1.0 - slack) {
    throw UnphysicalState("two-mode standard form violates the uncertainty constraints");
  }
  return sf;
}

TwoModeStandardForm reduce_two_mode(const GroundStateCM& cm, std::size_t i, std::size_t j) {
  if (i == j) throw DomainError("two-mode reduction needs distinct modes");
  if (i >= cm.n_modes() || j >= cm.n_modes()) throw DomainError("mode index out of range");
  return standard_form(cm.x(i, i), cm.x(j, j), cm.x(i, j), cm.p(i, i), cm.p(j, j), cm.p(i, j));
}

}  // namespace qdo
