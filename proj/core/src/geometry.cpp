#include "qdo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qdo/errors.hpp"
#include "qdo/tolerances.hpp"

namespace qdo {
namespace {

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("rho must be positive and finite, got " + std::to_string(rho));
  }
}

void check_theta(double theta) {
  // A small slack lets callers pass pi/3 and pi computed in floating point.
  constexpr double slack = 1e-12;
  if (!(theta >= std::numbers::pi / 3.0 - slack && theta <= std::numbers::pi + slack)) {
    throw DomainError("theta must lie in [pi/3, pi], got " + std::to_string(theta));
  }
}

struct LatticeCell {
  std::vector<Vec3> primitive;
  std::vector<Vec3> basis;
  double nearest;  // nearest-neighbour distance of the unscaled lattice
};

LatticeCell cell_for(GeometryKind kind) {
  const double s3 = std::sqrt(3.0);
  switch (kind) {
    case GeometryKind::square:
      return {{Vec3(1, 0, 0), Vec3(0, 1, 0)}, {Vec3::Zero()}, 1.0};
    case GeometryKind::triangular:
      return {{Vec3(1, 0, 0), Vec3(0.5, s3 / 2.0, 0)}, {Vec3::Zero()}, 1.0};
    case GeometryKind::honeycomb: {
      const Vec3 a1(s3, 0, 0);
      const Vec3 a2(-s3 / 2.0, 1.5, 0);
      return {{a1, a2}, {Vec3::Zero(), (2.0 * a1 + a2) / 3.0}, 1.0};
    }
    case GeometryKind::cubic:
      return {{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)}, {Vec3::Zero()}, 1.0};
    case GeometryKind::pyrochlore:
      // FCC primitive vectors in units of the conventional cube edge.
      return {{Vec3(0, 0.5, 0.5), Vec3(0.5, 0, 0.5), Vec3(0.5, 0.5, 0)},
              {Vec3(0, 0, 0), Vec3(0.25, 0.25, 0), Vec3(0.25, 0, 0.25), Vec3(0, 0.25, 0.25)},
              std::sqrt(2.0) / 4.0};
    default:
      throw DomainError("geometry kind '" + std::string(to_string(kind)) + "' is not a lattice");
  }
}

std::vector<int> cell_extents(GeometryKind kind, std::span<const int> dims, std::size_t axes) {
  const int nb = basis_size(kind);
  std::vector<int> ext(dims.begin(), dims.end());
  if (ext.size() == axes + 1 && nb > 1) {
    if (ext.back() == nb) {
      ext.pop_back();
    } else if (ext.front() == nb) {
      ext.erase(ext.begin());
    }
  }
  if (ext.size() != axes) {
    throw DomainError("lattice '" + std::string(to_string(kind)) + "' needs " +
                      std::to_string(axes) + " cell extents");
  }
  for (int e : ext) {
    if (e < 1) throw DomainError("lattice extents must be >= 1");
  }
  return ext;
}

}  // namespace

std::string_view to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::trimer: return "trimer";
    case GeometryKind::chain: return "chain";
    case GeometryKind::square: return "square";
    case GeometryKind::triangular: return "triangular";
    case GeometryKind::honeycomb: return "honeycomb";
    case GeometryKind::cubic: return "cubic";
    case GeometryKind::pyrochlore: return "pyrochlore";
    case GeometryKind::custom: return "custom";
  }
  return "custom";
}

GeometryKind parse_geometry_kind(std::string_view name) {
  for (auto k : {GeometryKind::trimer, GeometryKind::chain, GeometryKind::square,
                 GeometryKind::triangular, GeometryKind::honeycomb, GeometryKind::cubic,
                 GeometryKind::pyrochlore, GeometryKind::custom}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown geometry kind '" + std::string(name) + "'");
}

int basis_size(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::honeycomb: return 2;
    case GeometryKind::pyrochlore: return 4;
    default: return 1;
  }
}

SiteSet build_trimer(double rho, double theta) { return build_chain(3, rho, theta); }

SiteSet build_chain(int n, double rho, double theta) {
  if (n < 3) throw DomainError("chain needs at least 3 sites");
  check_rho(rho);
  check_theta(theta);
  const double dx = rho * std::sin(theta / 2.0);
  const double dy = rho * std::cos(theta / 2.0);
  SiteSet out;
  out.kind = n == 3 ? GeometryKind::trimer : GeometryKind::chain;
  out.rho = rho;
  out.theta = theta;
  out.positions.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out.positions.emplace_back(k * dx, (k % 2 == 1) ? dy : 0.0, 0.0);
  }
  return out;
}

SiteSet build_lattice(GeometryKind kind, std::span<const int> dims, double rho) {
  check_rho(rho);
  const LatticeCell cell = cell_for(kind);
  const std::vector<int> ext = cell_extents(kind, dims, cell.primitive.size());
  const double scale = rho / cell.nearest;

  SiteSet out;
  out.kind = kind;
  out.rho = rho;
  std::size_t cells = 1;
  for (int e : ext) cells *= static_cast<std::size_t>(e);
  out.positions.reserve(cells * cell.basis.size());

  std::vector<int> idx(ext.size(), 0);
  for (std::size_t c = 0; c < cells; ++c) {
    // Decode c row-major: last axis varies fastest.
    std::size_t rem = c;
    for (std::size_t ax = ext.size(); ax-- > 0;) {
      idx[ax] = static_cast<int>(rem % static_cast<std::size_t>(ext[ax]));
      rem /= static_cast<std::size_t>(ext[ax]);
    }
    Vec3 origin = Vec3::Zero();
    for (std::size_t ax = 0; ax < ext.size(); ++ax) origin += idx[ax] * cell.primitive[ax];
    for (const Vec3& b : cell.basis) out.positions.push_back(scale * (origin + b));
  }
  if (out.size() < 2) throw DomainError("lattice must contain at least two sites");
  return out;
}

SiteSet make_custom(std::vector<Vec3> positions) {
  if (positions.size() < 2) throw DomainError("a site set needs at least two sites");
  SiteSet out;
  out.rho = min_pair_distance(positions);
  if (out.rho < tol::coincident_site) throw DomainError("custom site set has coincident sites");
  out.positions = std::move(positions);
  return out;
}

double min_pair_distance(std::span<const Vec3> positions) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      best = std::min(best, (positions[i] - positions[j]).norm());
    }
  }
  return best;
}

std::size_t central_site(const SiteSet& sites) {
  if (sites.size() == 0) throw DomainError("empty site set");
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : sites.positions) centroid += p;
  centroid /= static_cast<double>(sites.size());
  const double tie = 1e-9 * std::max(sites.rho, 1.0);
  std::size_t best = 0;
  double best_d = (sites.positions[0] - centroid).norm();
  for (std::size_t i = 1; i < sites.size(); ++i) {
    const double d = (sites.positions[i] - centroid).norm();
    if (d < best_d - tie) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

std::vector<Neighbor> neighbor_shells(const SiteSet& sites, std::size_t center, int shells) {
  if (center >= sites.size()) throw DomainError("neighbour centre index out of range");
  std::vector<Neighbor> all;
  all.reserve(sites.size());
  for (std::size_t j = 0; j < sites.size(); ++j) {
    if (j == center) continue;
    const Vec3 d = sites.positions[j] - sites.positions[center];
    all.push_back({j, 0, d.norm(), d});
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Neighbor& a, const Neighbor& b) { return a.distance < b.distance; });
  const double tie = 1e-9 * std::max(sites.rho, 1.0);
  std::vector<Neighbor> out;
  int shell = 0;
  double shell_distance = -1.0;
  for (Neighbor n : all) {
    if (n.distance > shell_distance + tie) {
      ++shell;
      shell_distance = n.distance;
      if (shell > shells) break;
    }
    n.shell = shell;
    out.push_back(n);
  }
  std::stable_sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.shell != b.shell ? a.shell < b.shell : a.index < b.index;
  });
  return out;
}

}  // namespace qdo
