#include "qbcharge/dynamics.hpp"

#include "qbcharge/ergotropy.hpp"

#include <cmath>
#include <sstream>

namespace qbcharge {

namespace {

constexpr double kTraceDriftLimit = 1e-6;
constexpr double kNegativityLimit = -1e-6;

// Dissipator on a working-basis (eigenbasis) state.
OperatorMatrix dissipate(const OperatorMatrix& rho_w, const Eigen::MatrixXd& gain, const Eigen::MatrixXd& decay) {
  OperatorMatrix out = -(decay.cast<Complex>().cwiseProduct(rho_w));
  const RealVector populations = rho_w.diagonal().real();
  const RealVector inflow = gain * populations;
  out.diagonal() += inflow.cast<Complex>();
  return out;
}

Eigen::MatrixXd decay_matrix(const RealVector& outflow) {
  const Eigen::Index dim = outflow.size();
  Eigen::MatrixXd decay(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    for (Eigen::Index a = 0; a < dim; ++a) decay(a, b) = outflow(a) + outflow(b);
  return decay;
}

bool all_finite(const OperatorMatrix& m) {
  return m.allFinite();
}

std::string describe(const std::string& reason, double t) {
  std::ostringstream os;
  os << reason << " at t=" << t;
  return os.str();
}

}  // namespace

void EvolutionSpec::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("EvolutionSpec.dt: must be positive");
  if (!(t_end >= dt) || !std::isfinite(t_end)) throw std::invalid_argument("EvolutionSpec.t_end: must be >= dt");
  if (record_every < 1) throw std::invalid_argument("EvolutionSpec.record_every: must be positive");
}

std::size_t EvolutionSpec::sample_count() const {
  // The small slack keeps t_end = k * dt * record_every from losing its last sample to rounding.
  const double ratio = t_end / (dt * static_cast<double>(record_every));
  return static_cast<std::size_t>(std::floor(ratio * (1.0 + 1e-12))) + 1;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) out.push_back(s.time);
  return out;
}

IntegrationFailure::IntegrationFailure(const std::string& what, double failure_time, Trajectory partial)
    : std::runtime_error(what), failure_time_(failure_time), partial_(std::move(partial)) {}

double IntegrationFailure::last_good_time() const {
  return partial_.samples.empty() ? 0.0 : partial_.samples.back().time;
}

OperatorMatrix rhs(const OperatorMatrix& rho, const OperatorMatrix& h, const ChannelSet& channels) {
  if (rho.rows() != h.rows() || rho.cols() != h.cols() || h.rows() != h.cols())
    throw std::invalid_argument("rhs: state and Hamiltonian dimensions differ");
  const Complex minus_i{0.0, -1.0};
  OperatorMatrix out = minus_i * (h * rho - rho * h);
  if (channels.empty()) return out;
  if (channels.dimension() != rho.rows()) throw std::invalid_argument("rhs: channel basis dimension differs");

  const OperatorMatrix& v = channels.basis().vectors;
  const OperatorMatrix rho_w = v.adjoint() * rho * v;
  const OperatorMatrix d_w = dissipate(rho_w, 2.0 * channels.rate_matrix(), decay_matrix(channels.outflow()));
  out += v * d_w * v.adjoint();
  return out;
}

EigenbasisGenerator::EigenbasisGenerator(const OperatorMatrix& h, const ChannelSet& channels)
    : basis_(channels.basis().vectors),
      h_working_(basis_.adjoint() * h * basis_),
      gain_(2.0 * channels.rate_matrix()),
      decay_(decay_matrix(channels.outflow())) {
  if (h.rows() != channels.dimension()) throw std::invalid_argument("EigenbasisGenerator: dimension mismatch");
  // Exact Hermiticity keeps the X - X^dagger shortcut below consistent.
  h_working_ = 0.5 * (h_working_ + h_working_.adjoint()).eval();
}

OperatorMatrix EigenbasisGenerator::to_working(const OperatorMatrix& rho) const {
  return basis_.adjoint() * rho * basis_;
}

OperatorMatrix EigenbasisGenerator::to_fock(const OperatorMatrix& rho_working) const {
  return basis_ * rho_working * basis_.adjoint();
}

OperatorMatrix EigenbasisGenerator::operator()(const OperatorMatrix& rho_working) const {
  // For Hermitian rho, rho H = (H rho)^dagger, so one product gives the commutator.
  const OperatorMatrix x = h_working_ * rho_working;
  OperatorMatrix out = Complex{0.0, -1.0} * (x - x.adjoint());
  out += dissipate(rho_working, gain_, decay_);
  return out;
}

double default_time_step(const OperatorMatrix& h, const ChannelSet& channels) {
  const EigenSystem eig = eig_hermitian(h);
  const double spread = eig.values.size() == 0 ? 0.0 : eig.values.maxCoeff() - eig.values.minCoeff();
  const double scale = std::max(spread, channels.max_decay_rate());
  return scale > 0.0 ? 1.0 / (20.0 * scale) : 1.0;
}

Trajectory evolve(const EvolutionSpec& spec, const OperatorMatrix& h, const ChannelSet& channels,
                  const ObservableSpec& observables) {
  spec.validate();
  const auto dim = static_cast<Eigen::Index>(observables.layout.dimension());
  if (h.rows() != dim || h.cols() != dim) throw std::invalid_argument("evolve: Hamiltonian dimension differs from layout");
  if (channels.dimension() != dim) throw std::invalid_argument("evolve: channel dimension differs from layout");
  if (observables.energy_hamiltonian.rows() != dim)
    throw std::invalid_argument("evolve: energy Hamiltonian dimension differs from layout");
  for (int m : observables.tracked_modes)
    if (m < 0 || m >= observables.layout.mode_count()) throw std::invalid_argument("evolve: tracked mode out of range");

  OperatorMatrix rho0;
  if (spec.initial_state) {
    rho0 = *spec.initial_state;
    if (rho0.rows() != dim || rho0.cols() != dim) throw std::invalid_argument("evolve: initial state dimension differs");
    require_density_matrix(rho0, "evolve initial state");
  } else {
    rho0 = OperatorMatrix::Zero(dim, dim);
    rho0(0, 0) = 1.0;
  }

  const EigenbasisGenerator generator(h, channels);
  const RealVector energy_spectrum = eig_hermitian(observables.energy_hamiltonian).values;
  const int c = observables.layout.cutoff();
  OperatorMatrix local_h = OperatorMatrix::Zero(c, c);
  for (int n = 0; n < c; ++n) local_h(n, n) = observables.omega_cell * n;
  const RealVector local_spectrum = local_h.diagonal().real();

  Trajectory traj;
  traj.samples.reserve(spec.sample_count());
  traj.min_eigenvalue = 0.0;

  OperatorMatrix rho_w = generator.to_working(rho0);
  rho_w = 0.5 * (rho_w + rho_w.adjoint()).eval();
  double step_defect = 0.0;

  const std::size_t samples = spec.sample_count();
  const double record_dt = spec.dt * spec.record_every;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) * record_dt;
    if (k > 0) {
      for (int s = 0; s < spec.record_every; ++s) {
        rho_w = step_rk4(rho_w, spec.dt, generator, &step_defect);
        traj.max_hermiticity_defect = std::max(traj.max_hermiticity_defect, step_defect);
      }
    }
    if (!all_finite(rho_w)) throw IntegrationFailure(describe("non-finite density matrix", t), t, std::move(traj));

    const OperatorMatrix rho = generator.to_fock(rho_w);
    Sample sample;
    sample.time = t;
    sample.trace = rho.trace().real();
    sample.purity = rho_w.squaredNorm();
    sample.hermiticity_defect = step_defect;
    sample.min_reduced_eigenvalue = 0.0;

    const double drift = std::abs(sample.trace - 1.0);
    if (drift > kTraceDriftLimit) throw IntegrationFailure(describe("trace drift above 1e-6", t), t, std::move(traj));

    bool first = true;
    for (int m : observables.tracked_modes) {
      const OperatorMatrix reduced = partial_trace(rho, m, observables.layout);
      const ErgotropyReport local = ergotropy_unchecked(reduced, local_h, local_spectrum);
      sample.cell_ergotropy.push_back(local.ergotropy);
      const double lowest = local.spectrum_rho.back();
      sample.min_reduced_eigenvalue = first ? lowest : std::min(sample.min_reduced_eigenvalue, lowest);
      first = false;
    }
    if (sample.min_reduced_eigenvalue < kNegativityLimit)
      throw IntegrationFailure(describe("reduced state lost positivity", t), t, std::move(traj));

    const ErgotropyReport global = ergotropy_unchecked(rho, observables.energy_hamiltonian, energy_spectrum);
    sample.total_energy = global.energy;
    sample.global_ergotropy = global.ergotropy;

    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    traj.min_eigenvalue = std::min(traj.min_eigenvalue, sample.min_reduced_eigenvalue);
    traj.samples.push_back(std::move(sample));
    traj.final_state = rho;
  }
  return traj;
}

}  // namespace qbcharge
