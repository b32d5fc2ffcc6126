#include "qdo/coupling.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "qdo/errors.hpp"
#include "qdo/tolerances.hpp"

namespace qdo {
namespace {

PotentialMatrix finish_potential(Matrix v, const Matrix& scaled_coupling, bool homogeneous) {
  PotentialMatrix out;
  out.v = std::move(v);
  out.eigen = symmetric_eigen(out.v);
  if (homogeneous) {
    out.coupling_eigenvalues = out.eigen.values.array() - 1.0;
  } else {
    out.coupling_eigenvalues = symmetric_eigen(scaled_coupling).values;
  }
  const Vector& c = out.coupling_eigenvalues;
  if (c.size() == 0) {
    out.positive_definite = true;
    out.perturbative = true;
    return out;
  }
  // V = D^1/2 (I + S) D^1/2, so V > 0 exactly when every eigenvalue of S exceeds -1.
  out.positive_definite = c.minCoeff() > -1.0 + tol::positive_definite_margin;
  out.perturbative = c.cwiseAbs().maxCoeff() < 1.0;
  return out;
}

}  // namespace

Mat3 dipole_block(const Vec3& separation) {
  const double r = separation.norm();
  if (r < tol::coincident_site) throw DomainError("coincident sites: dipole coupling is singular");
  const Vec3 u = separation / r;
  return (Mat3::Identity() - 3.0 * u * u.transpose()) / (r * r * r);
}

CouplingMatrix build_coupling(const SiteSet& sites) {
  const std::size_t n = sites.size();
  CouplingMatrix out;
  out.n_qdo = n;
  out.w = Matrix::Zero(static_cast<Eigen::Index>(3 * n), static_cast<Eigen::Index>(3 * n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const Mat3 blk = dipole_block(sites.positions[a] - sites.positions[b]);
      const auto ia = static_cast<Eigen::Index>(3 * a);
      const auto ib = static_cast<Eigen::Index>(3 * b);
      out.w.block<3, 3>(ia, ib) = blk;
      out.w.block<3, 3>(ib, ia) = blk.transpose();
    }
  }
  return out;
}

CouplingMatrix mode_coupling(Matrix w) {
  if (w.rows() != w.cols()) throw DomainError("mode coupling must be square");
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    if (w(i, i) != 0.0) throw DomainError("mode coupling must have a zero diagonal");
    for (Eigen::Index j = 0; j < i; ++j) {
      if (w(i, j) != w(j, i)) throw DomainError("mode coupling must be symmetric");
    }
  }
  return {std::move(w), 0};
}

PotentialMatrix build_potential(const CouplingMatrix& w) {
  Matrix v = w.w;
  v.diagonal().array() += 1.0;
  return finish_potential(std::move(v), w.w, true);
}

PotentialMatrix build_potential_general(const SiteSet& sites, std::span<const QdoParams> params) {
  const std::size_t n = sites.size();
  if (params.size() != n) {
    throw DomainError("parameter count " + std::to_string(params.size()) +
                      " does not match site count " + std::to_string(n));
  }
  for (const QdoParams& p : params) {
    if (!(p.polarizability > 0.0) || !(p.frequency_ratio > 0.0)) {
      throw DomainError("polarizabilities and frequency ratios must be positive");
    }
  }
  const auto dim = static_cast<Eigen::Index>(3 * n);
  Matrix v = Matrix::Zero(dim, dim);
  for (std::size_t a = 0; a < n; ++a) {
    const auto ia = static_cast<Eigen::Index>(3 * a);
    const double wa = params[a].frequency_ratio;
    v.block<3, 3>(ia, ia) = wa * wa * Mat3::Identity();
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto ib = static_cast<Eigen::Index>(3 * b);
      const double scale = wa * params[b].frequency_ratio *
                           std::sqrt(params[a].polarizability * params[b].polarizability);
      const Mat3 blk = scale * dipole_block(sites.positions[a] - sites.positions[b]);
      v.block<3, 3>(ia, ib) = blk;
      v.block<3, 3>(ib, ia) = blk.transpose();
    }
  }
  // Coupling measured against the local frequencies: D^-1/2 (V - D) D^-1/2.
  Matrix scaled = v;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double di = std::sqrt(v(i, i));
    scaled.row(i) /= di;
    scaled.col(i) /= di;
  }
  scaled.diagonal().setZero();
  return finish_potential(std::move(v), scaled, false);
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

}  // namespace qdo
