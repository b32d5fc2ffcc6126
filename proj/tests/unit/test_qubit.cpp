#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qdo/coupling.hpp"
#include "qdo/dispersion.hpp"
#include "qdo/errors.hpp"
#include "qdo/qubit.hpp"

using namespace qdo;
using std::numbers::pi;

TEST_CASE("single qubit spectrum") {
  const QubitModel m(1, {});
  const Matrix h = m.hamiltonian();
  CHECK(h(0, 0) == 0.5);
  CHECK(h(1, 1) == 1.5);
  CHECK(h(0, 1) == 0.0);
  const QubitGroundState g = qubit_ground_state(m);
  CHECK(g.energy == doctest::Approx(0.5));
  CHECK(qubit_binding(g, 0.0).e_qub == doctest::Approx(0.0));
}

TEST_CASE("two qubit Hamiltonian pattern") {
  const double k = 0.3;
  const Matrix h = QubitModel(2, {{0, 1, k}}).hamiltonian();
  Matrix expect = Matrix::Zero(4, 4);
  expect.diagonal() << 1.0, 2.0, 2.0, 3.0;
  expect(0, 3) = expect(3, 0) = k;
  expect(1, 2) = expect(2, 1) = k;
  CHECK((h - expect).norm() == 0.0);
}

TEST_CASE("model construction") {
  CHECK_THROWS_AS(QubitModel(15, {}), TooLarge);
  CHECK_THROWS_AS(QubitModel(2, {{0, 2, 0.1}}), DomainError);
  CHECK_THROWS_AS(QubitModel(2, {{1, 1, 0.1}}), DomainError);
  CHECK_THROWS_AS(QubitModel(0, {}), DomainError);

  const SiteSet t = build_trimer(2.6, pi / 2.0);
  const CouplingMatrix w = build_coupling(t);
  const QubitModel m = build_qubit_model(w);
  CHECK(m.qubits() == 9);
  CHECK(m.dimension() == 512u);
  const Matrix h = m.hamiltonian();
  CHECK(h.rows() == 512);
  CHECK((h - h.transpose()).norm() == 0.0);
  // x-modes of sites 0 and 1: flip bits 0 and 3 together.
  CHECK(h(0, 9) == doctest::Approx(0.5 * w.w(0, 3)));
  for (Eigen::Index s = 0; s < 512; ++s) CHECK(2.0 * h(s, s) == std::round(2.0 * h(s, s)));

  const QubitModel unscaled = build_qubit_model(w, 1.0);
  CHECK(unscaled.hamiltonian()(0, 9) == doctest::Approx(w.w(0, 3)));

  const SiteSet big = make_custom({Vec3::Zero(), Vec3(3, 0, 0), Vec3(6, 0, 0), Vec3(9, 0, 0),
                                   Vec3(12, 0, 0)});
  CHECK_THROWS_AS(build_qubit_model(build_coupling(big)), TooLarge);
}

TEST_CASE("ground state quality") {
  const QubitModel m = build_qubit_model(build_coupling(build_trimer(2.0, 2.0)));
  const QubitGroundState g = qubit_ground_state(m);
  CHECK(std::abs(g.state.norm() - 1.0) < 1e-12);
  Vector hx;
  m.apply(g.state, hx);
  CHECK((hx - g.energy * g.state).norm() < 1e-9);
  CHECK((m.hamiltonian() * g.state - hx).norm() < 1e-12);
}

TEST_CASE("Lanczos agrees with the dense solver") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::vector<QubitCoupling> c;
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) c.push_back({i, j, u(rng)});
  }
  const QubitModel m(10, c);
  const QubitGroundState dense = qubit_ground_state(m, QubitSolver::dense);
  const QubitGroundState lanczos = qubit_ground_state(m, QubitSolver::lanczos);
  CHECK(lanczos.energy == doctest::Approx(dense.energy).epsilon(1e-12));
  CHECK(std::abs(std::abs(lanczos.state.dot(dense.state)) - 1.0) < 1e-9);
  Vector hx;
  m.apply(lanczos.state, hx);
  CHECK((hx - lanczos.energy * lanczos.state).norm() < 1e-9);
}

TEST_CASE("binding conventions") {
  const QubitModel free(3, {});
  const QubitBinding b = qubit_binding(free, 0.0);
  CHECK(b.ground_energy == doctest::Approx(1.5));
  CHECK(b.e_qub == doctest::Approx(0.0));
  CHECK(b.e_qub_printed == doctest::Approx(0.75));
  CHECK(b.printed_baseline == doctest::Approx(0.75));

  const QubitBinding c = qubit_binding(QubitModel(2, {{0, 1, 0.2}}), 0.01);
  CHECK(c.e_qub > 0.0);
  CHECK(c.delta_qub == doctest::Approx(c.e_qub - 0.01));
  CHECK(c.e_qub_printed - c.printed_baseline == doctest::Approx(0.5 * c.e_qub));
}

TEST_CASE("tangles") {
  const QubitGroundState product = qubit_ground_state(QubitModel(3, {}));
  CHECK(qubit_tangle(product, 0) == doctest::Approx(0.0));
  CHECK(qubit_pair_tangle(product, 0, 1) == doctest::Approx(0.0));

  for (double k : {-0.7, -0.2, 0.1, 0.4, 0.9}) {
    const QubitGroundState g = qubit_ground_state(QubitModel(2, {{0, 1, k}}));
    CHECK(qubit_tangle(g, 0) == doctest::Approx(qubit_pair_tangle(g, 0, 1)).epsilon(1e-9));
    CHECK(qubit_tangle(g, 1) == doctest::Approx(qubit_tangle(g, 0)).epsilon(1e-12));
  }

  const double k = 0.3;
  const QubitGroundState sym = qubit_ground_state(QubitModel(3, {{0, 1, k}, {1, 2, k}, {0, 2, k}}));
  CHECK(qubit_tangle(sym, 0) == doctest::Approx(qubit_tangle(sym, 1)).epsilon(1e-10));
  CHECK(qubit_tangle(sym, 1) == doctest::Approx(qubit_tangle(sym, 2)).epsilon(1e-10));
  CHECK(qubit_pair_tangle(sym, 0, 1) == doctest::Approx(qubit_pair_tangle(sym, 1, 2)).epsilon(1e-9));

  Eigen::Matrix4d bell = Eigen::Matrix4d::Zero();
  bell(0, 0) = bell(3, 3) = bell(0, 3) = bell(3, 0) = 0.5;
  CHECK(wootters_tangle(bell) == doctest::Approx(1.0));
  CHECK(wootters_tangle(Eigen::Matrix4d::Identity() / 4.0) == 0.0);
}

TEST_CASE("qubit monogamy") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<QubitCoupling> c;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) c.push_back({i, j, u(rng)});
    }
    const QubitGroundState g = qubit_ground_state(QubitModel(4, c));
    for (int i = 0; i < 4; ++i) {
      double pairs = 0.0;
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        const double t = qubit_pair_tangle(g, i, j);
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
        pairs += t;
      }
      CHECK(qubit_tangle(g, i) >= pairs - 1e-9);
    }
  }
}

TEST_CASE("reduced density matrices") {
  const QubitGroundState g = qubit_ground_state(QubitModel(3, {{0, 1, 0.4}, {1, 2, -0.3}}));
  const Eigen::Matrix2d r1 = reduced_density(g, 1);
  CHECK(r1.trace() == doctest::Approx(1.0));
  const Eigen::Matrix4d r02 = reduced_density(g, 0, 2);
  CHECK(r02.trace() == doctest::Approx(1.0));
  CHECK((r02 - r02.transpose()).norm() < 1e-15);
  // Tracing the pair down again gives the single-qubit matrix.
  Eigen::Matrix2d r0 = Eigen::Matrix2d::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int m = 0; m < 2; ++m) r0(a, b) += r02(a + 2 * m, b + 2 * m);
    }
  }
  CHECK((r0 - reduced_density(g, 0)).norm() < 1e-14);
  CHECK_THROWS_AS(reduced_density(g, 3), DomainError);
  CHECK_THROWS_AS(reduced_density(g, 1, 1), DomainError);
}
