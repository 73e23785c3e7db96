#pragma once

// Parameter sweeps and the built-in experiment presets.
//
// Sweep file:
//   {
//     "preset": "fig2a" | ... | "fig3c" | "custom",
//     "parameter": "d" | "s" | "g" | "T_e" | "gamma" | "temperature" | "omega0",
//     "values": [ ... strictly increasing ... ],
//     "base": { run config overrides }
//   }
//
// A preset fills the minimal-cell parameter row of its experiment and fixes
// the swept parameter; "base" may override anything except that parameter.

#include "qbcharge/config.hpp"

#include <string>
#include <vector>

namespace qbcharge {

struct SweepSpec {
  std::string preset = "custom";
  std::string parameter;
  std::vector<double> values;
  RunConfig base;
};

struct Preset {
  std::string name;
  std::string parameter;
  nlohmann::json row;  ///< run config fragment for the fixed parameters
};

const std::vector<Preset>& presets();

/// Throws ConfigError for unknown presets.
const Preset& find_preset(const std::string& name);

SweepSpec parse_sweep(const nlohmann::json& doc, const Overrides& overrides = {});
SweepSpec load_sweep(const std::filesystem::path& path, const Overrides& overrides = {});

/// Canonical parameter name ("T" -> "temperature", "t_e" -> "T_e").
std::string canonical_parameter(const std::string& name);

/// Copy of `base` with the swept parameter set to `value`. Sweeping d keeps
/// omega_cell and sets s = d * omega_cell.
RunConfig with_parameter(const RunConfig& base, const std::string& parameter, double value);

/// The run config path the parameter lives under, e.g. "system.g".
std::string parameter_field(const std::string& parameter);

}  // namespace qbcharge
