#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qdo/errors.hpp"
#include "qdo/geometry.hpp"

using namespace qdo;
using std::numbers::pi;

namespace {

double pair_distance(const SiteSet& s, std::size_t a, std::size_t b) {
  return (s.positions[a] - s.positions[b]).norm();
}

void check_min_distance(const SiteSet& s) {
  CHECK(std::abs(min_pair_distance(s.positions) - s.rho) <= 1e-12 * s.rho);
}

}  // namespace

TEST_CASE("trimer examples") {
  const SiteSet eq = build_trimer(1.0, pi / 3.0);
  REQUIRE(eq.size() == 3);
  CHECK(pair_distance(eq, 0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pair_distance(eq, 1, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pair_distance(eq, 0, 2) == doctest::Approx(1.0).epsilon(1e-14));

  const SiteSet lin = build_trimer(1.0, pi);
  CHECK(lin.positions[1].isApprox(Vec3(1, 0, 0), 1e-15));
  CHECK(lin.positions[2].isApprox(Vec3(2, 0, 0), 1e-15));
  CHECK(std::abs(lin.positions[1].y()) < 1e-15);

  const SiteSet right = build_trimer(2.60, pi / 2.0);
  CHECK(pair_distance(right, 0, 2) == doctest::Approx(2.0 * 2.60 * std::sin(pi / 4.0)));
  CHECK(pair_distance(right, 0, 2) == doctest::Approx(3.676955).epsilon(1e-6));
  CHECK(right.kind == GeometryKind::trimer);
  CHECK(right.theta.has_value());
}

TEST_CASE("trimer rejects bad input") {
  CHECK_THROWS_AS(build_trimer(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(build_trimer(1.0, 3.2), DomainError);
  CHECK_THROWS_AS(build_trimer(0.0, 2.0), DomainError);
  CHECK_THROWS_AS(build_trimer(-1.0, 2.0), DomainError);
  CHECK_NOTHROW(build_trimer(1.0, pi / 3.0));
  CHECK_NOTHROW(build_trimer(1.0, pi));
}

TEST_CASE("chain examples") {
  for (double theta : {pi / 3.0, 1.7, 2.5, pi}) {
    const SiteSet c = build_chain(3, 2.2, theta);
    const SiteSet t = build_trimer(2.2, theta);
    REQUIRE(c.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(c.positions[i] == t.positions[i]);
  }
  const SiteSet lin = build_chain(4, 1.0, pi);
  for (int k = 0; k < 4; ++k) {
    CHECK(lin.positions[static_cast<std::size_t>(k)].x() == doctest::Approx(k));
    CHECK(std::abs(lin.positions[static_cast<std::size_t>(k)].y()) < 1e-15);
  }
  const SiteSet zig = build_chain(100, 2.3, pi / 3.0);
  CHECK(zig.size() == 100);
  CHECK(zig.kind == GeometryKind::chain);
  check_min_distance(zig);
  for (std::size_t k = 0; k + 1 < zig.size(); ++k) {
    CHECK(pair_distance(zig, k, k + 1) == doctest::Approx(2.3).epsilon(1e-13));
  }
  CHECK_THROWS_AS(build_chain(2, 1.0, pi), DomainError);
}

TEST_CASE("lattice examples") {
  const std::vector<int> sq{2, 2};
  const SiteSet square = build_lattice(GeometryKind::square, sq, 1.0);
  REQUIRE(square.size() == 4);
  check_min_distance(square);
  CHECK(pair_distance(square, 0, 3) == doctest::Approx(std::sqrt(2.0)));

  const std::vector<int> hc{2, 2, 2};
  const SiteSet honey = build_lattice(GeometryKind::honeycomb, hc, 1.0);
  REQUIRE(honey.size() == 8);
  check_min_distance(honey);
  for (std::size_t i = 0; i < honey.size(); ++i) {
    int nn = 0;
    for (std::size_t j = 0; j < honey.size(); ++j) {
      if (i != j && std::abs(pair_distance(honey, i, j) - 1.0) < 1e-9) ++nn;
    }
    CHECK(nn <= 3);
  }

  const std::vector<int> py{4, 2, 2, 2};
  const SiteSet pyro = build_lattice(GeometryKind::pyrochlore, py, 1.0);
  CHECK(pyro.size() == 32);
  check_min_distance(pyro);
}

TEST_CASE("lattice site counts and spacing") {
  struct Case {
    GeometryKind kind;
    std::vector<int> dims;
    std::size_t n;
  };
  const std::vector<Case> cases{{GeometryKind::square, {5, 3}, 15},
                                {GeometryKind::triangular, {4, 4}, 16},
                                {GeometryKind::honeycomb, {3, 4}, 24},
                                {GeometryKind::honeycomb, {3, 4, 2}, 24},
                                {GeometryKind::cubic, {3, 3, 3}, 27},
                                {GeometryKind::pyrochlore, {2, 2, 2}, 32},
                                {GeometryKind::pyrochlore, {4, 2, 3, 2}, 48}};
  for (const Case& c : cases) {
    for (double rho : {0.7, 2.37, 4.0}) {
      const SiteSet s = build_lattice(c.kind, c.dims, rho);
      CHECK(s.size() == c.n);
      CHECK(s.rho == rho);
      check_min_distance(s);
    }
  }
  const std::vector<int> bad{0, 3};
  CHECK_THROWS_AS(build_lattice(GeometryKind::square, bad, 1.0), DomainError);
  const std::vector<int> wrong_axes{3, 3, 3};
  CHECK_THROWS_AS(build_lattice(GeometryKind::square, wrong_axes, 1.0), DomainError);
  const std::vector<int> ok{3, 3};
  CHECK_THROWS_AS(build_lattice(GeometryKind::trimer, ok, 1.0), DomainError);
}

TEST_CASE("triangular primitive vectors meet at pi/3") {
  const std::vector<int> d{2, 2};
  const SiteSet t = build_lattice(GeometryKind::triangular, d, 1.0);
  // Sites (0,0), (0,1), (1,0), (1,1): site 1 is a2, site 2 is a1.
  const Vec3 a1 = t.positions[2] - t.positions[0];
  const Vec3 a2 = t.positions[1] - t.positions[0];
  CHECK(std::acos(a1.dot(a2)) == doctest::Approx(pi / 3.0));
}

TEST_CASE("central site and neighbour shells") {
  const std::vector<int> d{5, 5};
  const SiteSet sq = build_lattice(GeometryKind::square, d, 2.0);
  const std::size_t c = central_site(sq);
  CHECK(c == 12);
  const auto shells = neighbor_shells(sq, c, 2);
  int first = 0, second = 0;
  for (const Neighbor& n : shells) {
    if (n.shell == 1) {
      ++first;
      CHECK(n.distance == doctest::Approx(2.0));
    } else {
      ++second;
      CHECK(n.distance == doctest::Approx(2.0 * std::sqrt(2.0)));
    }
    CHECK((sq.positions[n.index] - sq.positions[c]).isApprox(n.displacement));
  }
  CHECK(first == 4);
  CHECK(second == 4);
}

TEST_CASE("custom site sets") {
  const SiteSet s = make_custom({Vec3(0, 0, 0), Vec3(0, 0, 3), Vec3(4, 0, 0)});
  CHECK(s.rho == doctest::Approx(3.0));
  CHECK(s.kind == GeometryKind::custom);
  CHECK_THROWS_AS(make_custom({Vec3(0, 0, 0)}), DomainError);
  CHECK_THROWS_AS(make_custom({Vec3(0, 0, 0), Vec3(0, 0, 0)}), DomainError);
}

TEST_CASE("geometry kind names round-trip") {
  for (auto k : {GeometryKind::trimer, GeometryKind::chain, GeometryKind::square,
                 GeometryKind::triangular, GeometryKind::honeycomb, GeometryKind::cubic,
                 GeometryKind::pyrochlore, GeometryKind::custom}) {
    CHECK(parse_geometry_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_geometry_kind("hexagonal"), DomainError);
}
