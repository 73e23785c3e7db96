#pragma once

// JSON run configuration.
//
//   {
//     "system":    { "n_layers", "omega_c", "omega_cell", "g", "t_e", "s",
//                    "drive_amplitude", "drive_frequency", "cutoff", "kappa_law" },
//     "bath":      { "gamma", "omega0", "temperature", "omega_k",
//                    "dissipator", "channel_basis" },
//     "evolution": { "t_end", "dt", "record_every", "sample_interval", "initial_state" },
//     "analysis":  { "stabilization_band" }
//   }
//
// Every key is optional. omega_c and drive_frequency default to omega_cell,
// drive_amplitude to 10 * g. A run manifest is itself a valid config: its
// extra "manifest" block is ignored on input.

#include "qbcharge/bath.hpp"
#include "qbcharge/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbcharge {

/// Config parse or validation failure; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  SystemConfig system;
  BathConfig bath;
  double t_end = 100.0;
  std::optional<double> dt;         ///< auto when empty
  std::optional<int> record_every;  ///< auto when empty (from sample_interval)
  double sample_interval = 0.1;
  std::vector<int> initial_fock;    ///< empty = vacuum
  double stabilization_band = 0.05;

  void validate() const;
};

RunConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a config file; parse errors report line and column.
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Fully explicit serialization, re-ingestible by parse_config.
nlohmann::json to_json(const RunConfig& config);

/// Command-line overrides applied after parsing.
struct Overrides {
  std::optional<int> cutoff;
  std::optional<DissipatorMode> dissipator;
  std::optional<ChannelBasis> channel_basis;
  std::optional<double> stabilization_band;
};

void apply_overrides(RunConfig& config, const Overrides& overrides);

}  // namespace qbcharge
