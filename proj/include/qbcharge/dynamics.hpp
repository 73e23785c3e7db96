#pragma once

// Master-equation integration in the rotating frame:
//
//   d rho / dt = -i [H, rho] + sum_c R_c (2 L_c rho L_c^+ - L_c^+ L_c rho - rho L_c^+ L_c)
//
// with fixed-step classic RK4.

#include "qbcharge/bath.hpp"
#include "qbcharge/hilbert.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qbcharge {

struct EvolutionSpec {
  double t_end = 100.0;
  double dt = 0.01;
  int record_every = 1;
  /// Fock-basis initial density matrix; the global vacuum when empty.
  std::optional<OperatorMatrix> initial_state;

  void validate() const;

  /// floor(t_end / (dt * record_every)) + 1
  std::size_t sample_count() const;
  /// RK4 steps needed to reach the last recorded sample.
  std::size_t step_count() const { return (sample_count() - 1) * static_cast<std::size_t>(record_every); }
};

/// What to measure at each recorded sample.
struct ObservableSpec {
  ModeLayout layout;
  std::vector<int> tracked_modes;  ///< mode indices for local ergotropy
  double omega_cell = 1.0;
  OperatorMatrix energy_hamiltonian;  ///< total energy and global ergotropy
};

struct Sample {
  double time = 0.0;
  std::vector<double> cell_ergotropy;  ///< one per tracked mode
  double global_ergotropy = 0.0;
  double total_energy = 0.0;
  double trace = 0.0;
  double purity = 0.0;
  double hermiticity_defect = 0.0;     ///< of the raw RK4 output before re-Hermitization
  double min_reduced_eigenvalue = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;
  OperatorMatrix final_state;  ///< Fock basis, at the last good sample
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;
  double max_hermiticity_defect = 0.0;

  std::vector<double> times() const;
};

/// Thrown by evolve on NaN/Inf, trace drift above 1e-6 or a reduced-state
/// eigenvalue below -1e-6. Carries every sample recorded before the failure.
class IntegrationFailure : public std::runtime_error {
public:
  IntegrationFailure(const std::string& what, double failure_time, Trajectory partial);

  double failure_time() const { return failure_time_; }
  double last_good_time() const;
  const Trajectory& partial() const { return partial_; }

private:
  double failure_time_;
  Trajectory partial_;
};

/// Generator applied to rho in the Fock basis.
OperatorMatrix rhs(const OperatorMatrix& rho, const OperatorMatrix& h, const ChannelSet& channels);

/// One classic RK4 step followed by (rho + rho^dagger) / 2. The Hermiticity
/// defect of the raw update is written to *defect when given.
template <class Rhs>
OperatorMatrix step_rk4(const OperatorMatrix& rho, double dt, const Rhs& f, double* defect = nullptr) {
  const OperatorMatrix k1 = f(rho);
  const OperatorMatrix k2 = f(rho + (0.5 * dt) * k1);
  const OperatorMatrix k3 = f(rho + (0.5 * dt) * k2);
  const OperatorMatrix k4 = f(rho + dt * k3);
  OperatorMatrix next = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (defect != nullptr) *defect = hermiticity_defect(next);
  return 0.5 * (next + next.adjoint());
}

/// The generator expressed in the eigenbasis of the channel set, where the
/// dissipator is diagonal on coherences and a rate matrix on populations.
class EigenbasisGenerator {
public:
  EigenbasisGenerator(const OperatorMatrix& h, const ChannelSet& channels);

  OperatorMatrix to_working(const OperatorMatrix& rho) const;
  OperatorMatrix to_fock(const OperatorMatrix& rho_working) const;

  /// Generator applied to a Hermitian working-basis state.
  OperatorMatrix operator()(const OperatorMatrix& rho_working) const;

private:
  OperatorMatrix basis_;
  OperatorMatrix h_working_;
  Eigen::MatrixXd gain_;   ///< 2 * rate(target, source)
  Eigen::MatrixXd decay_;  ///< outflow_a + outflow_b
};

/// 1 / (20 * max(spectral spread of h, fastest population decay rate)).
double default_time_step(const OperatorMatrix& h, const ChannelSet& channels);

Trajectory evolve(const EvolutionSpec& spec, const OperatorMatrix& h, const ChannelSet& channels,
                  const ObservableSpec& observables);

}  // namespace qbcharge
