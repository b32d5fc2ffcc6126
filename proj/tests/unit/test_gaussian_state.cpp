#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qdo/coupling.hpp"
#include "qdo/dispersion.hpp"
#include "qdo/errors.hpp"
#include "qdo/gaussian_state.hpp"

using namespace qdo;
using std::numbers::pi;

namespace {

PotentialMatrix potential_of(const SiteSet& s) { return build_potential(build_coupling(s)); }

PotentialMatrix two_mode(double kappa) {
  Matrix w = Matrix::Zero(2, 2);
  w(0, 1) = w(1, 0) = kappa;
  return build_potential(mode_coupling(w));
}

}  // namespace

TEST_CASE("covariance of uncoupled modes") {
  const GroundStateCM cm = ground_state_cm(build_potential(mode_coupling(Matrix::Zero(4, 4))));
  CHECK(cm.x_block.isIdentity(1e-15));
  CHECK(cm.p_block.isIdentity(1e-15));
}

TEST_CASE("dimer z-mode correlations") {
  const SiteSet d = make_custom({Vec3::Zero(), Vec3(0, 0, 2.0)});
  const PotentialMatrix v = potential_of(d);
  const GroundStateCM cm = ground_state_cm(v);
  // z modes are 2 and 5, coupled by k = -2/rho^3 = -0.25.
  const double k = v.v(2, 5);
  CHECK(k == doctest::Approx(-0.25));
  const double ep = std::sqrt(1.0 + k), em = std::sqrt(1.0 - k);
  CHECK(cm.x(2, 5) == doctest::Approx(0.5 * (1.0 / ep - 1.0 / em)).epsilon(1e-14));
  CHECK(cm.p(2, 5) == doctest::Approx(0.5 * (ep - em)).epsilon(1e-14));
  CHECK(cm.x(2, 2) == doctest::Approx(0.5 * (1.0 / ep + 1.0 / em)).epsilon(1e-14));
  // Cross-polarisation modes are uncorrelated.
  CHECK(std::abs(cm.x(0, 4)) < 1e-15);
}

TEST_CASE("matrix square roots reconstruct V") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const PotentialMatrix v = potential_of(testing::random_cluster(rng, 3, 1.6, 3.0));
    REQUIRE(v.positive_definite);
    const GroundStateCM cm = ground_state_cm(v);
    CHECK((cm.p_block * cm.p_block - v.v).norm() < 1e-10);
    CHECK((cm.x_block * cm.p_block - Matrix::Identity(9, 9)).norm() < 1e-10);
  }
}

TEST_CASE("diagonal covariance bounds on random assemblies") {
  std::mt19937_64 rng(23);
  int checked = 0;
  while (checked < 200) {
    const PotentialMatrix v = potential_of(testing::random_cluster(rng, 4, 1.4, 3.0));
    if (!v.positive_definite) continue;
    ++checked;
    const GroundStateCM cm = ground_state_cm(v);
    for (std::size_t i = 0; i < cm.n_modes(); ++i) {
      CHECK(cm.p(i, i) <= 1.0 + 1e-12);
      CHECK(cm.x(i, i) >= 1.0 / cm.p(i, i) - 1e-12);
    }
  }
}

TEST_CASE("symplectic spectrum") {
  const PotentialMatrix free = build_potential(mode_coupling(Matrix::Zero(3, 3)));
  CHECK((symplectic_spectrum(free) - Vector::Ones(3)).norm() < 1e-14);

  const SiteSet t = build_trimer(2.6, pi / 2.0);
  const PotentialMatrix v = potential_of(t);
  const Vector eps = symplectic_spectrum(v);
  CHECK(std::abs(0.5 * eps.sum() + binding_energy(spectrum(v)) - 4.5) < 1e-12);

  // The full Williamson route agrees.
  Matrix h = Matrix::Zero(18, 18);
  h.topLeftCorner(9, 9) = v.v;
  h.bottomRightCorner(9, 9).setIdentity();
  CHECK((symplectic_spectrum_full(h) - eps).norm() < 1e-10);

  // Independent of the symmetric solver: sqrt(lambda) directly.
  Vector root = v.eigen.values.cwiseSqrt();
  std::sort(root.begin(), root.end());
  CHECK((root - eps).norm() < 1e-12);

  CHECK_THROWS_AS(symplectic_spectrum(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), DomainError);
}

TEST_CASE("standard form") {
  const TwoModeStandardForm u = standard_form(1, 1, 0, 1, 1, 0);
  CHECK(u.a == 1.0);
  CHECK(u.b == 1.0);
  CHECK(u.c_plus == 0.0);
  CHECK(u.c_minus == 0.0);

  const GroundStateCM cm = ground_state_cm(two_mode(0.5));
  const TwoModeStandardForm sf = reduce_two_mode(cm, 0, 1);
  const double a = std::sqrt(cm.x(0, 0) * cm.p(0, 0));
  CHECK(sf.a == doctest::Approx(a));
  CHECK(sf.b == doctest::Approx(a));
  // Local scaling to x_ii = p_ii maps the correlations to the standard form.
  const double s = std::sqrt(cm.p(0, 0) / cm.x(0, 0));
  CHECK(sf.c_plus == doctest::Approx(std::abs(cm.x(0, 1)) * s).epsilon(1e-10));
  CHECK(sf.c_minus == doctest::Approx(-std::abs(cm.p(0, 1)) / s).epsilon(1e-10));
  CHECK(sf.c_plus >= std::abs(sf.c_minus));
  CHECK(sf.c_plus * sf.c_minus == doctest::Approx(cm.x(0, 1) * cm.p(0, 1)));

  const GroundStateCM tri = ground_state_cm(potential_of(build_trimer(3.0, pi / 3.0)));
  const TwoModeStandardForm z = reduce_two_mode(tri, 2, 5);
  const double ab = z.a * z.b;
  CHECK(z.a >= 1.0);
  CHECK(z.b >= 1.0);
  CHECK(ab - z.c_plus * z.c_plus >= 1.0 - 1e-12);
  CHECK(ab - z.c_minus * z.c_minus >= 1.0 - 1e-12);
  const double lhs = (ab - z.c_plus * z.c_plus) * (ab - z.c_minus * z.c_minus) + 1.0;
  CHECK(lhs >= z.a * z.a + z.b * z.b + 2.0 * z.c_plus * z.c_minus - 1e-12);

  CHECK_THROWS_AS(reduce_two_mode(tri, 1, 1), DomainError);
  CHECK_THROWS_AS(reduce_two_mode(tri, 1, 9), DomainError);
  CHECK_THROWS_AS(standard_form(0.5, 1, 0, 0.5, 1, 0), UnphysicalState);
}

TEST_CASE("non-positive-definite potential") {
  const PotentialMatrix v = build_potential(build_coupling(make_custom({Vec3::Zero(), Vec3(0.9, 0, 0)})));
  CHECK_THROWS_AS(ground_state_cm(v), NotPositiveDefinite);
  CHECK_THROWS_AS(symplectic_spectrum(v), NotPositiveDefinite);
}
