#include "qdo/linalg.hpp"

namespace qdo {

SymmetricEigen symmetric_eigen(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::ComputeEigenvectors);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace qdo
