#include "qbcharge/ergotropy.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qbcharge {

namespace {

// Energy minus passive energy is nonnegative by the rearrangement inequality;
// anything down to this size below zero is rounding.
constexpr double kRoundingFloor = 1e-10;

std::vector<double> to_std(const RealVector& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

double passive_energy(std::vector<double> populations, std::vector<double> energies) {
  if (populations.size() != energies.size()) throw std::invalid_argument("passive_energy: spectrum sizes differ");
  std::stable_sort(populations.begin(), populations.end(), std::greater<>());
  std::stable_sort(energies.begin(), energies.end());
  double total = 0.0;
  for (std::size_t k = 0; k < populations.size(); ++k) total += populations[k] * energies[k];
  return total;
}

ErgotropyReport ergotropy_unchecked(const OperatorMatrix& rho, const OperatorMatrix& h, const RealVector& h_spectrum) {
  ErgotropyReport report;
  report.energy = expect(rho, h).real();

  const OperatorMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(herm, Eigen::EigenvaluesOnly);
  report.spectrum_rho = to_std(solver.eigenvalues());
  std::stable_sort(report.spectrum_rho.begin(), report.spectrum_rho.end(), std::greater<>());
  report.spectrum_h = to_std(h_spectrum);
  std::stable_sort(report.spectrum_h.begin(), report.spectrum_h.end());

  report.passive_energy = passive_energy(report.spectrum_rho, report.spectrum_h);
  double work = report.energy - report.passive_energy;
  if (work < 0.0 && work > -kRoundingFloor) work = 0.0;
  report.ergotropy = work;
  return report;
}

ErgotropyReport compute_ergotropy(const OperatorMatrix& rho, const OperatorMatrix& h) {
  if (rho.rows() != h.rows() || rho.cols() != h.cols())
    throw std::invalid_argument("compute_ergotropy: state and Hamiltonian dimensions differ");
  require_density_matrix(rho, "compute_ergotropy");
  const EigenSystem eig = eig_hermitian(h);
  return ergotropy_unchecked(rho, h, eig.values);
}

ErgotropyReport local_ergotropy(const OperatorMatrix& rho_full, int cell_index, const ModeLayout& layout,
                                double omega_cell) {
  const OperatorMatrix reduced = partial_trace(rho_full, cell_index, layout);
  const int c = layout.cutoff();
  OperatorMatrix h = OperatorMatrix::Zero(c, c);
  for (int n = 0; n < c; ++n) h(n, n) = omega_cell * n;
  return compute_ergotropy(reduced, h);
}

}  // namespace qbcharge
