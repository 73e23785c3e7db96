#include "qbcharge/bath.hpp"

#include <cmath>
#include <stdexcept>

namespace qbcharge {

namespace {

// Gaps below this are treated as degenerate in transition-frequency mode.
constexpr double kDegenerateGap = 1e-9;

double coth(double x) { return 1.0 / std::tanh(x); }

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw std::invalid_argument("BathConfig." + field + ": " + why);
}

}  // namespace

std::string to_string(DissipatorMode mode) {
  return mode == DissipatorMode::paper_literal ? "paper-literal" : "transition-frequency";
}

std::string to_string(ChannelBasis basis) {
  return basis == ChannelBasis::static_hamiltonian ? "static" : "rotating";
}

DissipatorMode parse_dissipator_mode(const std::string& text) {
  if (text == "paper-literal") return DissipatorMode::paper_literal;
  if (text == "transition-frequency") return DissipatorMode::transition_frequency;
  throw std::invalid_argument("unknown dissipator mode '" + text + "' (expected paper-literal or transition-frequency)");
}

ChannelBasis parse_channel_basis(const std::string& text) {
  if (text == "static") return ChannelBasis::static_hamiltonian;
  if (text == "rotating") return ChannelBasis::rotating_frame;
  throw std::invalid_argument("unknown channel basis '" + text + "' (expected static or rotating)");
}

void BathConfig::validate() const {
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma", "must be nonnegative");
  require(std::isfinite(omega0) && omega0 > 0.0, "omega0", "must be positive");
  require(std::isfinite(temperature) && temperature > 0.0, "temperature", "must be positive");
  require(std::isfinite(omega_k) && omega_k > 0.0, "omega_k", "must be positive");
}

double spectral_density(double omega_k, const BathConfig& cfg) {
  if (!(omega_k > 0.0)) throw std::invalid_argument("spectral_density: omega_k must be positive");
  return cfg.gamma * omega_k / (cfg.omega0 * cfg.omega0 + omega_k * omega_k);
}

double redfield_rate(double spectral_weight, double omega_k, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("redfield_rate: temperature must be positive");
  if (!(omega_k > 0.0)) throw std::invalid_argument("redfield_rate: omega_k must be positive");
  if (spectral_weight < 0.0) throw std::invalid_argument("redfield_rate: spectral weight must be nonnegative");
  return spectral_weight * (coth(omega_k / (2.0 * temperature)) + 1.0);
}

double absorption_rate(double spectral_weight, double omega_k, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("absorption_rate: temperature must be positive");
  if (!(omega_k > 0.0)) throw std::invalid_argument("absorption_rate: omega_k must be positive");
  if (spectral_weight < 0.0) throw std::invalid_argument("absorption_rate: spectral weight must be nonnegative");
  // coth(x) - 1 = 2 / (e^{2x} - 1), stable for small and large x
  return spectral_weight * 2.0 / std::expm1(omega_k / temperature);
}

ChannelSet::ChannelSet(EigenSystem basis, std::vector<JumpChannel> channels)
    : basis_(std::move(basis)), channels_(std::move(channels)) {
  const Eigen::Index dim = basis_.vectors.rows();
  rates_ = Eigen::MatrixXd::Zero(dim, dim);
  outflow_ = RealVector::Zero(dim);
  for (const JumpChannel& ch : channels_) {
    if (ch.target < 0 || ch.target >= dim || ch.source < 0 || ch.source >= dim || ch.target == ch.source)
      throw std::invalid_argument("ChannelSet: channel indices out of range");
    if (!(ch.rate >= 0.0)) throw std::invalid_argument("ChannelSet: channel rates must be nonnegative");
    rates_(ch.target, ch.source) += ch.rate;
    outflow_(ch.source) += ch.rate;
  }
}

OperatorMatrix ChannelSet::operator_matrix(const JumpChannel& channel) const {
  return basis_.vectors.col(channel.target) * basis_.vectors.col(channel.source).adjoint();
}

double ChannelSet::max_decay_rate() const {
  return outflow_.size() == 0 ? 0.0 : 2.0 * outflow_.maxCoeff();
}

ChannelSet jump_channels(const OperatorMatrix& h, const BathConfig& cfg) {
  cfg.validate();
  EigenSystem eig = eig_hermitian(h);
  const Eigen::Index dim = eig.values.size();
  std::vector<JumpChannel> channels;

  if (cfg.mode == DissipatorMode::paper_literal) {
    const double rate = redfield_rate(spectral_density(cfg.omega_k, cfg), cfg.omega_k, cfg.temperature);
    channels.reserve(static_cast<std::size_t>(dim * (dim - 1) / 2));
    // Degenerate pairs are kept: the common rate does not depend on the gap.
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index i = 0; i < j; ++i)
        channels.push_back({i, j, rate, eig.values(j) - eig.values(i)});
  } else {
    for (Eigen::Index j = 0; j < dim; ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const double gap = eig.values(j) - eig.values(i);
        if (gap < kDegenerateGap) continue;
        const double weight = spectral_density(gap, cfg);
        channels.push_back({i, j, redfield_rate(weight, gap, cfg.temperature), gap});
        channels.push_back({j, i, absorption_rate(weight, gap, cfg.temperature), -gap});
      }
    }
  }
  return ChannelSet(std::move(eig), std::move(channels));
}

ChannelSet no_channels(Eigen::Index dim) {
  EigenSystem eig{RealVector::LinSpaced(dim, 0.0, static_cast<double>(dim - 1)), OperatorMatrix::Identity(dim, dim)};
  return ChannelSet(std::move(eig), {});
}

}  // namespace qbcharge
