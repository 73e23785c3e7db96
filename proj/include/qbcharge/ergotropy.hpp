#pragma once

#include "qbcharge/hilbert.hpp"

#include <vector>

namespace qbcharge {

/// Energy bookkeeping of one state against one Hamiltonian. The passive
/// energy pairs the largest populations with the lowest energies, which is
/// the minimum of Tr[U rho U^dagger h] over all unitaries.
struct ErgotropyReport {
  double energy = 0.0;
  double passive_energy = 0.0;
  double ergotropy = 0.0;
  std::vector<double> spectrum_rho;  ///< descending
  std::vector<double> spectrum_h;    ///< ascending
};

/// Validates rho as a density matrix and h as Hermitian of the same dimension.
ErgotropyReport compute_ergotropy(const OperatorMatrix& rho, const OperatorMatrix& h);

/// Same as compute_ergotropy with a precomputed ascending spectrum of h and
/// no density-matrix validation. Used on trajectory samples, whose trace and
/// positivity are monitored separately with looser tolerances.
ErgotropyReport ergotropy_unchecked(const OperatorMatrix& rho, const OperatorMatrix& h, const RealVector& h_spectrum);

/// Ergotropy of one mode's reduced state under omega_cell * n.
ErgotropyReport local_ergotropy(const OperatorMatrix& rho_full, int cell_index, const ModeLayout& layout,
                                double omega_cell);

/// Sum_k r_k eps_k after sorting r descending and eps ascending.
double passive_energy(std::vector<double> populations, std::vector<double> energies);

}  // namespace qbcharge
