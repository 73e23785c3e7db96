#include "qbcharge/presets.hpp"

namespace qbcharge {

using nlohmann::json;

namespace {

// Shared by every row: minimal cell, s = 1, omega_k = 0.085, T_e = 0.001,
// resonant charger and drive, F = 10 * g with the reference g = 0.01.
json common_row(double omega, double temperature) {
  return {
      {"system",
       {{"n_layers", 1},
        {"omega_cell", omega},
        {"omega_c", omega},
        {"drive_frequency", omega},
        {"drive_amplitude", 0.1},
        {"g", 0.01},
        {"t_e", 0.001},
        {"s", 1.0}}},
      {"bath", {{"gamma", 1e-6}, {"omega0", 0.05}, {"temperature", temperature}, {"omega_k", 0.085}}},
  };
}

json without(json row, const std::string& section, const std::string& key) {
  row[section].erase(key);
  return row;
}

bool has_field(const json& doc, const std::string& field) {
  const auto dot = field.find('.');
  const std::string section = field.substr(0, dot);
  const std::string key = field.substr(dot + 1);
  return doc.contains(section) && doc[section].is_object() && doc[section].contains(key);
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      // omega is left open in the d-sweep row; held at 4.00 and d varied through s.
      {"fig2a", "d", without(common_row(4.0, 250.0), "system", "s")},
      {"fig2b", "g", without(common_row(4.0, 300.0), "system", "g")},
      {"fig2c", "T_e", without(common_row(3.0, 300.0), "system", "t_e")},
      {"fig3a", "gamma", without(common_row(3.0, 300.0), "bath", "gamma")},
      {"fig3b", "temperature", without(common_row(4.0, 300.0), "bath", "temperature")},
      {"fig3c", "omega0", without(common_row(4.0, 300.0), "bath", "omega0")},
  };
  return table;
}

const Preset& find_preset(const std::string& name) {
  for (const Preset& p : presets())
    if (p.name == name) return p;
  throw ConfigError("sweep field 'preset': unknown preset '" + name + "'");
}

std::string canonical_parameter(const std::string& name) {
  if (name == "d" || name == "s" || name == "g" || name == "gamma" || name == "temperature" || name == "omega0")
    return name;
  if (name == "T_e" || name == "t_e") return "T_e";
  if (name == "T") return "temperature";
  throw ConfigError("sweep field 'parameter': unknown parameter '" + name +
                    "' (expected d, s, g, T_e, gamma, temperature or omega0)");
}

std::string parameter_field(const std::string& parameter) {
  const std::string p = canonical_parameter(parameter);
  if (p == "d" || p == "s") return "system.s";
  if (p == "g") return "system.g";
  if (p == "T_e") return "system.t_e";
  if (p == "gamma") return "bath.gamma";
  if (p == "temperature") return "bath.temperature";
  return "bath.omega0";
}

RunConfig with_parameter(const RunConfig& base, const std::string& parameter, double value) {
  RunConfig cfg = base;
  const std::string p = canonical_parameter(parameter);
  if (p == "d") cfg.system.s = value * cfg.system.omega_cell;
  else if (p == "s") cfg.system.s = value;
  else if (p == "g") cfg.system.g = value;
  else if (p == "T_e") cfg.system.t_e = value;
  else if (p == "gamma") cfg.bath.gamma = value;
  else if (p == "temperature") cfg.bath.temperature = value;
  else cfg.bath.omega0 = value;
  cfg.validate();
  return cfg;
}

SweepSpec parse_sweep(const json& doc, const Overrides& overrides) {
  if (!doc.is_object()) throw ConfigError("sweep spec: expected a JSON object");
  for (const auto& item : doc.items()) {
    const std::string& k = item.key();
    if (k != "preset" && k != "parameter" && k != "values" && k != "base")
      throw ConfigError("sweep field '" + k + "': unknown key");
  }

  SweepSpec spec;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigError("sweep field 'preset': expected a string");
    spec.preset = doc["preset"].get<std::string>();
  }

  json base = json::object();
  if (doc.contains("base")) {
    if (!doc["base"].is_object()) throw ConfigError("sweep field 'base': expected an object");
    base = doc["base"];
  }

  std::string parameter;
  if (doc.contains("parameter")) {
    if (!doc["parameter"].is_string()) throw ConfigError("sweep field 'parameter': expected a string");
    parameter = canonical_parameter(doc["parameter"].get<std::string>());
  }

  if (spec.preset != "custom") {
    const Preset& preset = find_preset(spec.preset);
    if (!parameter.empty() && parameter != preset.parameter)
      throw ConfigError("sweep field 'parameter': preset " + preset.name + " sweeps '" + preset.parameter + "', not '" +
                        parameter + "'");
    parameter = preset.parameter;
    // The swept column has no scalar value in the preset row; a scalar in base is a contradiction.
    const std::string field = parameter_field(parameter);
    if (has_field(base, field))
      throw ConfigError("sweep field 'base." + field + "': preset " + preset.name + " sweeps this parameter; give it in 'values'");
    json merged = preset.row;
    merged.merge_patch(base);
    base = merged;
  } else if (parameter.empty()) {
    throw ConfigError("sweep field 'parameter': required for custom sweeps");
  }
  spec.parameter = parameter;

  if (!doc.contains("values") || !doc["values"].is_array())
    throw ConfigError("sweep field 'values': expected a list of numbers");
  for (const json& v : doc["values"]) {
    if (!v.is_number()) throw ConfigError("sweep field 'values': expected a list of numbers");
    spec.values.push_back(v.get<double>());
  }
  if (spec.values.empty()) throw ConfigError("sweep field 'values': the sweep list is empty");
  for (std::size_t k = 1; k < spec.values.size(); ++k)
    if (!(spec.values[k] > spec.values[k - 1]))
      throw ConfigError("sweep field 'values': values must be strictly increasing");

  try {
    spec.base = parse_config(base);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("sweep field 'base': ") + e.what());
  }
  apply_overrides(spec.base, overrides);
  for (double v : spec.values) {
    try {
      (void)with_parameter(spec.base, spec.parameter, v);
    } catch (const ConfigError& e) {
      throw ConfigError("sweep field 'values': " + std::string(e.what()));
    }
  }
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path, const Overrides& overrides) {
  const json doc = read_json_file(path);
  try {
    return parse_sweep(doc, overrides);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace qbcharge
