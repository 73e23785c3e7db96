#include "qbcharge/dynamics.hpp"

#include "qbcharge/model.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace qbcharge;

namespace {

SystemConfig fig2a_cell(int cutoff) {
  SystemConfig c;
  c.cutoff = cutoff;
  return c;
}

BathConfig fig2a_bath() {
  BathConfig b;
  b.temperature = 250.0;
  return b;
}

ObservableSpec observe(const HamiltonianParts& p, double omega_cell) {
  return ObservableSpec{p.layout, {1, 2}, omega_cell, p.h_static};
}

OperatorMatrix integrate(const OperatorMatrix& rho0, const OperatorMatrix& h, const ChannelSet& ch, double dt, int steps) {
  const EigenbasisGenerator gen(h, ch);
  OperatorMatrix w = gen.to_working(rho0);
  for (int k = 0; k < steps; ++k) w = step_rk4(w, dt, gen);
  return gen.to_fock(w);
}

}  // namespace

TEST_CASE("generator without channels is the commutator") {
  std::mt19937_64 rng(1);
  const OperatorMatrix h = oracle::random_hermitian(6, rng);
  const OperatorMatrix rho = oracle::random_density(6, rng);
  const OperatorMatrix expected = Complex(0.0, -1.0) * (h * rho - rho * h);
  CHECK(oracle::max_abs_diff(rhs(rho, h, no_channels(6)), expected) < 1e-14);

  const EigenSystem e = eig_hermitian(h);
  const OperatorMatrix stationary = e.vectors * Eigen::VectorXd::LinSpaced(6, 0.3, 0.05).cast<Complex>().asDiagonal() *
                                    e.vectors.adjoint();
  CHECK(rhs(stationary, h, no_channels(6)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("two-level decay rates") {
  OperatorMatrix h = OperatorMatrix::Zero(2, 2);
  h(1, 1) = 1.0;
  const double r = 0.3;
  const ChannelSet ch(eig_hermitian(h), {JumpChannel{0, 1, r, 1.0}});
  OperatorMatrix rho = OperatorMatrix::Zero(2, 2);
  rho(1, 1) = 1.0;
  const OperatorMatrix d = rhs(rho, h, ch);
  CHECK(d(1, 1).real() == doctest::Approx(-2.0 * r));
  CHECK(d(0, 0).real() == doctest::Approx(2.0 * r));
}

TEST_CASE("generator matches the superoperator on random inputs") {
  std::mt19937_64 rng(9);
  const OperatorMatrix h = oracle::random_hermitian(5, rng);
  BathConfig b;
  b.gamma = 0.05;
  for (DissipatorMode mode : {DissipatorMode::paper_literal, DissipatorMode::transition_frequency}) {
    b.mode = mode;
    const ChannelSet ch = jump_channels(oracle::random_hermitian(5, rng), b);
    const OperatorMatrix l = oracle::liouvillian(h, ch);
    const OperatorMatrix rho = oracle::random_density(5, rng);
    const OperatorMatrix ref = oracle::unvec(l * oracle::vec(rho), 5);
    CHECK(oracle::max_abs_diff(rhs(rho, h, ch), ref) < 1e-11);
    const EigenbasisGenerator gen(h, ch);
    CHECK(oracle::max_abs_diff(gen.to_fock(gen(gen.to_working(rho))), ref) < 1e-11);
  }
}

TEST_CASE("RK4 fixed point and Rabi oscillation") {
  OperatorMatrix rho = OperatorMatrix::Zero(2, 2);
  rho(0, 0) = 0.25;
  rho(1, 1) = 0.75;
  const auto zero = [](const OperatorMatrix& m) { return OperatorMatrix::Zero(m.rows(), m.cols()).eval(); };
  CHECK(step_rk4(rho, 0.1, zero) == rho);

  // H = Omega/2 sigma_x from |0>: P1(t) = sin^2(Omega t / 2).
  const double omega = 1.7, period = 2.0 * M_PI / omega;
  OperatorMatrix h(2, 2);
  h << 0, omega / 2, omega / 2, 0;
  OperatorMatrix start = OperatorMatrix::Zero(2, 2);
  start(0, 0) = 1.0;
  const int steps = 1300;
  const double dt = period / 1000.0;
  const OperatorMatrix end = integrate(start, h, no_channels(2), dt, steps);
  const double t = dt * steps;
  CHECK(std::abs(end(1, 1).real() - std::pow(std::sin(omega * t / 2), 2)) < 1e-8);
  CHECK(std::abs(end(0, 0).real() - std::pow(std::cos(omega * t / 2), 2)) < 1e-8);
}

TEST_CASE("RK4 on the minimal cell converges at fourth order to the exponential") {
  const SystemConfig c = fig2a_cell(2);
  const HamiltonianParts p = build_hamiltonian(c);
  const OperatorMatrix h = rotating_frame(p, c.drive_frequency);
  const ChannelSet ch = jump_channels(p.h_static, fig2a_bath());
  OperatorMatrix rho0 = OperatorMatrix::Zero(8, 8);
  rho0(0, 0) = 1.0;
  const double t_end = 20.0;
  const OperatorMatrix exact = oracle::propagate_exact(oracle::liouvillian(h, ch), rho0, t_end);
  const double e1 = oracle::max_abs_diff(integrate(rho0, h, ch, 0.4, 50), exact);
  const double e2 = oracle::max_abs_diff(integrate(rho0, h, ch, 0.2, 100), exact);
  const double order = std::log2(e1 / e2);
  CHECK(order > 3.7);
  CHECK(order < 4.3);
}

TEST_CASE("time grid bookkeeping") {
  EvolutionSpec spec;
  spec.t_end = 1.0;
  spec.dt = 0.1;
  spec.record_every = 2;
  CHECK(spec.sample_count() == 6);
  CHECK(spec.step_count() == 10);
  spec.dt = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("closed vacuum stays passive and closed evolution stays pure") {
  SystemConfig c = fig2a_cell(3);
  c.drive_amplitude = 0.0;
  HamiltonianParts p = build_hamiltonian(c);
  EvolutionSpec spec;
  spec.t_end = 20.0;
  spec.dt = 0.01;
  spec.record_every = 50;
  Trajectory tr = evolve(spec, rotating_frame(p, c.drive_frequency), no_channels(27), observe(p, c.omega_cell));
  for (const Sample& s : tr.samples) {
    CHECK(s.cell_ergotropy[0] == 0.0);
    CHECK(s.cell_ergotropy[1] == 0.0);
    CHECK(std::abs(s.global_ergotropy) < 1e-14);
  }

  c.drive_amplitude = 0.1;
  p = build_hamiltonian(c);
  tr = evolve(spec, rotating_frame(p, c.drive_frequency), no_channels(27), observe(p, c.omega_cell));
  for (const Sample& s : tr.samples) CHECK(std::abs(s.purity - 1.0) < 1e-6);
  CHECK(tr.samples.back().total_energy > 0.0);
  CHECK(tr.max_trace_drift < 1e-12);
}

TEST_CASE("closed system from an excited state conserves energy") {
  SystemConfig c = fig2a_cell(3);
  c.drive_amplitude = 0.0;
  const HamiltonianParts p = build_hamiltonian(c);
  EvolutionSpec spec;
  spec.t_end = 50.0;
  spec.dt = 0.01;
  spec.record_every = 100;
  spec.initial_state = fock_projector({1, 0, 0}, p.layout);
  const Trajectory tr = evolve(spec, rotating_frame(p, c.drive_frequency), no_channels(27), observe(p, c.omega_cell));
  for (const Sample& s : tr.samples) CHECK(std::abs(s.total_energy - tr.samples.front().total_energy) < 1e-8);
  CHECK(tr.samples.front().total_energy == doctest::Approx(c.omega_c));
}

TEST_CASE("evolve rejects inconsistent inputs") {
  const SystemConfig c = fig2a_cell(2);
  const HamiltonianParts p = build_hamiltonian(c);
  EvolutionSpec spec;
  spec.t_end = 1.0;
  const OperatorMatrix h = rotating_frame(p, c.drive_frequency);
  CHECK_THROWS_AS(evolve(spec, h, no_channels(4), observe(p, c.omega_cell)), std::invalid_argument);
  spec.initial_state = OperatorMatrix::Identity(8, 8);
  CHECK_THROWS_AS(evolve(spec, h, no_channels(8), observe(p, c.omega_cell)), std::invalid_argument);
}

TEST_CASE("runaway integration reports a failure with the partial trajectory") {
  const SystemConfig c = fig2a_cell(2);
  const HamiltonianParts p = build_hamiltonian(c);
  const OperatorMatrix h = rotating_frame(p, c.drive_frequency);
  EvolutionSpec spec;
  spec.t_end = 10.0;
  spec.dt = 1.0;  // far beyond the RK4 stability region at this rate
  BathConfig b = fig2a_bath();
  b.gamma = 1.0;
  const ChannelSet ch = jump_channels(p.h_static, b);
  try {
    (void)evolve(spec, h, ch, observe(p, c.omega_cell));
    FAIL("expected an integration failure");
  } catch (const IntegrationFailure& e) {
    CHECK(e.failure_time() > 0.0);
    CHECK(e.last_good_time() < e.failure_time());
    CHECK(e.partial().samples.front().time == 0.0);
  }
}

TEST_CASE("default time step") {
  const SystemConfig c = fig2a_cell(3);
  const HamiltonianParts p = build_hamiltonian(c);
  const OperatorMatrix h = rotating_frame(p, c.drive_frequency);
  const ChannelSet ch = jump_channels(p.h_static, fig2a_bath());
  const double dt = default_time_step(h, ch);
  const Eigen::VectorXd e = eig_hermitian(h).values;
  CHECK(dt == doctest::Approx(1.0 / (20.0 * std::max(e.maxCoeff() - e.minCoeff(), ch.max_decay_rate()))));
  CHECK(default_time_step(OperatorMatrix::Zero(2, 2), no_channels(2)) == 1.0);
}
