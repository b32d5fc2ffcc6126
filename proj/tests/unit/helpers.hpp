#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qdo/geometry.hpp"

namespace qdo::testing {

/// Random cluster of n sites whose pair distances are at least min_dist.
inline SiteSet random_cluster(std::mt19937_64& rng, int n, double min_dist, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<Vec3> pos;
  while (static_cast<int>(pos.size()) < n) {
    const Vec3 p(u(rng), u(rng), u(rng));
    bool ok = true;
    for (const Vec3& q : pos) ok = ok && (p - q).norm() >= min_dist;
    if (ok) pos.push_back(p);
  }
  return make_custom(std::move(pos));
}

}  // namespace qdo::testing
