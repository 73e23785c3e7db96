#pragma once

// Debye bath, Redfield rates and eigenbasis jump channels.
//
// Units: hbar = k_B = 1. Temperatures and frequencies are plain magnitudes.

#include "qbcharge/hilbert.hpp"

#include <string>
#include <vector>

namespace qbcharge {

enum class DissipatorMode {
  /// One common rate evaluated at the fixed bath frequency omega_k; only
  /// downward channels (e_source > e_target in index order).
  paper_literal,
  /// Rate evaluated at each transition frequency, with detailed-balance
  /// upward channels.
  transition_frequency,
};

/// Which Hamiltonian's eigenstates the jump operators connect.
enum class ChannelBasis {
  /// Undriven lab-frame Hamiltonian h_static.
  static_hamiltonian,
  /// Rotating-frame generator H_RF including the drive.
  rotating_frame,
};

std::string to_string(DissipatorMode mode);
std::string to_string(ChannelBasis basis);
DissipatorMode parse_dissipator_mode(const std::string& text);
ChannelBasis parse_channel_basis(const std::string& text);

struct BathConfig {
  double gamma = 1e-6;
  double omega0 = 0.05;
  double temperature = 300.0;
  double omega_k = 0.085;
  DissipatorMode mode = DissipatorMode::paper_literal;
  ChannelBasis basis = ChannelBasis::static_hamiltonian;

  void validate() const;
};

/// gamma * omega / (omega0^2 + omega^2)
double spectral_density(double omega_k, const BathConfig& cfg);

/// J * (coth(omega / 2T) + 1)
double redfield_rate(double spectral_weight, double omega_k, double temperature);

/// J * (coth(omega / 2T) - 1), the absorption partner of redfield_rate.
double absorption_rate(double spectral_weight, double omega_k, double temperature);

/// L = |e_target><e_source| in the eigenbasis of the defining Hamiltonian.
struct JumpChannel {
  Eigen::Index target;
  Eigen::Index source;
  double rate;
  double transition_frequency;  ///< e_source - e_target
};

/// Jump channels that all live in one orthonormal eigenbasis.
class ChannelSet {
public:
  ChannelSet(EigenSystem basis, std::vector<JumpChannel> channels);

  const EigenSystem& basis() const { return basis_; }
  const std::vector<JumpChannel>& channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }
  bool empty() const { return channels_.empty(); }
  Eigen::Index dimension() const { return basis_.vectors.rows(); }

  /// Dense Fock-basis matrix of one channel operator.
  OperatorMatrix operator_matrix(const JumpChannel& channel) const;

  /// rates(target, source) summed over channels.
  const Eigen::MatrixXd& rate_matrix() const { return rates_; }

  /// Outflow per eigenstate: sum over channels leaving it of the rate.
  const RealVector& outflow() const { return outflow_; }

  /// Largest population decay rate, 2 * max outflow.
  double max_decay_rate() const;

private:
  EigenSystem basis_;
  std::vector<JumpChannel> channels_;
  Eigen::MatrixXd rates_;
  RealVector outflow_;
};

/// Eigendecomposes `h` and emits the jump channels for the chosen mode.
/// Throws std::invalid_argument if `h` is not Hermitian.
ChannelSet jump_channels(const OperatorMatrix& h, const BathConfig& cfg);

/// No channels at all (closed system) but the same basis bookkeeping.
ChannelSet no_channels(Eigen::Index dim);

}  // namespace qbcharge
