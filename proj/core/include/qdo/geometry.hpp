#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdo/linalg.hpp"

namespace qdo {

enum class GeometryKind { trimer, chain, square, triangular, honeycomb, cubic, pyrochlore, custom };

std::string_view to_string(GeometryKind kind);
/// Parses the lower-case name used by the CLI and JSON; throws DomainError.
GeometryKind parse_geometry_kind(std::string_view name);

/// Equilibrium positions of N oscillators in units of alpha^(1/3).
///
/// `rho` is the smallest inter-site separation. `theta` is present only for
/// trimers and chains.
struct SiteSet {
  std::vector<Vec3> positions;
  GeometryKind kind = GeometryKind::custom;
  double rho = 0.0;
  std::optional<double> theta;

  std::size_t size() const { return positions.size(); }
  std::size_t n_modes() const { return 3 * positions.size(); }
};

/// Three sites at (0,0,0), (rho sin(theta/2), rho cos(theta/2), 0), (2 rho sin(theta/2), 0, 0).
SiteSet build_trimer(double rho, double theta);

/// Linear-zigzag chain: site k at (k rho sin(theta/2), [k odd] rho cos(theta/2), 0).
SiteSet build_chain(int n, double rho, double theta);

/// Open-boundary lattice with nearest-neighbour distance rho.
///
/// `dims` holds the cell extents per primitive axis (2 for the planar kinds,
/// 3 for cubic and pyrochlore). The basis size may be prepended (pyrochlore:
/// 4,a,b,c) or appended (honeycomb: a,b,2) as long as it matches the kind.
/// Sites are ordered row-major over cells (last axis fastest) with the basis
/// index fastest inside each cell.
SiteSet build_lattice(GeometryKind kind, std::span<const int> dims, double rho);

/// Wraps arbitrary positions; rho becomes the exhaustive minimum separation.
SiteSet make_custom(std::vector<Vec3> positions);

/// Number of sites in the primitive basis of a lattice kind.
int basis_size(GeometryKind kind);

/// Exhaustive O(N^2) minimum pair distance.
double min_pair_distance(std::span<const Vec3> positions);

/// Site closest to the centroid; ties (within 1e-9 rho) go to the lowest index.
std::size_t central_site(const SiteSet& sites);

struct Neighbor {
  std::size_t index;
  int shell;  // 1 = nearest, 2 = next-nearest, ...
  double distance;
  Vec3 displacement;  // r_neighbor - r_center
};

/// Neighbours of `center` grouped into the first `shells` distance shells.
std::vector<Neighbor> neighbor_shells(const SiteSet& sites, std::size_t center, int shells);

}  // namespace qdo
