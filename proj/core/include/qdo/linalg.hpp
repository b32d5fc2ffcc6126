#pragma once

#include <Eigen/Dense>

namespace qdo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Orthogonal eigendecomposition A = Q diag(values) Q^T of a real symmetric matrix.
struct SymmetricEigen {
  Vector values;  // ascending
  Matrix vectors;
};

SymmetricEigen symmetric_eigen(const Matrix& a);

/// Q diag(fn(values)) Q^T, symmetrised by averaging with its transpose.
template <typename Fn>
Matrix spectral_function(const SymmetricEigen& eig, Fn fn) {
  const Vector mapped = eig.values.unaryExpr(fn);
  Matrix out = eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace qdo
