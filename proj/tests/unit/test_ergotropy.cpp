#include "qbcharge/ergotropy.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace qbcharge;

namespace {

OperatorMatrix two_level(double w) {
  OperatorMatrix h = OperatorMatrix::Zero(2, 2);
  h(1, 1) = w;
  return h;
}

}  // namespace

TEST_CASE("fixed two-level values") {
  const double w = 1.3;
  OperatorMatrix rho = OperatorMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  CHECK(compute_ergotropy(rho, two_level(w)).ergotropy == doctest::Approx(0.0));
  rho(0, 0) = 0.0;
  rho(1, 1) = 1.0;
  CHECK(compute_ergotropy(rho, two_level(w)).ergotropy == doctest::Approx(w));
  rho(0, 0) = 0.3;
  rho(1, 1) = 0.7;
  const ErgotropyReport r = compute_ergotropy(rho, two_level(w));
  CHECK(r.energy == doctest::Approx(0.7 * w));
  CHECK(r.passive_energy == doctest::Approx(0.3 * w));
  CHECK(r.ergotropy == doctest::Approx(0.4 * w));
  CHECK(r.spectrum_rho.front() >= r.spectrum_rho.back());
  CHECK(r.spectrum_h.front() <= r.spectrum_h.back());
}

TEST_CASE("passive states carry no ergotropy") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const OperatorMatrix h = oracle::random_hermitian(6, rng);
    const EigenSystem e = eig_hermitian(h);
    CHECK(compute_ergotropy(projector(e.vectors.col(0)), h).ergotropy < 1e-10);
    const Eigen::VectorXd boltz = (-(e.values.array() - e.values(0)) / 0.8).exp();
    const OperatorMatrix thermal =
        e.vectors * (boltz / boltz.sum()).cast<Complex>().asDiagonal() * e.vectors.adjoint();
    CHECK(std::abs(compute_ergotropy(0.5 * (thermal + thermal.adjoint()), h).ergotropy) < 1e-10);
  }
}

TEST_CASE("sorted pairing matches the permutation oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = 2 + trial % 6;
    const OperatorMatrix rho = oracle::random_density(dim, rng);
    const OperatorMatrix h = oracle::random_hermitian(dim, rng);
    const double e = compute_ergotropy(rho, h).ergotropy;
    CHECK(e >= 0.0);
    CHECK(std::abs(e - oracle::brute_force_ergotropy(rho, h)) < 1e-10);
  }
  CHECK(passive_energy({0.2, 0.5, 0.3}, {3.0, 1.0, 2.0}) == doctest::Approx(0.5 * 1.0 + 0.3 * 2.0 + 0.2 * 3.0));
}

TEST_CASE("no unitary extracts more than the ergotropy") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const OperatorMatrix rho = oracle::random_density(4, rng);
    const OperatorMatrix h = oracle::random_hermitian(4, rng);
    const ErgotropyReport r = compute_ergotropy(rho, h);
    for (int k = 0; k < 50; ++k) {
      const OperatorMatrix u = oracle::haar_unitary(4, rng);
      const double extracted = r.energy - (u * rho * u.adjoint() * h).trace().real();
      CHECK(extracted <= r.ergotropy + 1e-9);
    }
  }
}

TEST_CASE("local ergotropy of product and entangled states") {
  const ModeLayout layout({"C", "B10", "B11"}, 2);
  const double w = 4.0;
  CHECK(local_ergotropy(fock_projector({0, 0, 0}, layout), 1, layout, w).ergotropy == doctest::Approx(0.0));
  const OperatorMatrix excited = fock_projector({0, 0, 1}, layout);
  CHECK(local_ergotropy(excited, 2, layout, w).ergotropy == doctest::Approx(w));
  CHECK(local_ergotropy(excited, 1, layout, w).ergotropy == doctest::Approx(0.0));

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
  psi(2) = 1.0 / std::sqrt(2.0);  // |0,1,0>
  psi(1) = 1.0 / std::sqrt(2.0);  // |0,0,1>
  const OperatorMatrix bell = projector(psi);
  CHECK(std::abs(local_ergotropy(bell, 1, layout, w).ergotropy) < 1e-12);
  CHECK(std::abs(local_ergotropy(bell, 2, layout, w).ergotropy) < 1e-12);
}

TEST_CASE("input validation") {
  OperatorMatrix rho = OperatorMatrix::Identity(2, 2);
  CHECK_THROWS_AS(compute_ergotropy(rho, two_level(1.0)), std::invalid_argument);
  rho /= 2.0;
  CHECK_THROWS_AS(compute_ergotropy(rho, OperatorMatrix::Identity(3, 3)), std::invalid_argument);
}
