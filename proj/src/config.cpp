#include "qbcharge/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qbcharge {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {"system", "bath", "evolution", "analysis", "manifest"};
const std::set<std::string> kSystemKeys = {"n_layers", "omega_c", "omega_cell", "g", "t_e", "s",
                                           "drive_amplitude", "drive_frequency", "cutoff", "kappa_law"};
const std::set<std::string> kBathKeys = {"gamma", "omega0", "temperature", "omega_k", "dissipator", "channel_basis"};
const std::set<std::string> kEvolutionKeys = {"t_end", "dt", "record_every", "sample_interval", "initial_state"};
const std::set<std::string> kAnalysisKeys = {"stabilization_band"};

void check_keys(const json& section, const std::string& name, const std::set<std::string>& allowed) {
  if (!section.is_object()) throw ConfigError("config field '" + name + "': expected an object");
  for (const auto& item : section.items())
    if (!allowed.count(item.key()))
      throw ConfigError("config field '" + (name.empty() ? "" : name + ".") + item.key() + "': unknown key");
}

const json* find(const json& section, const char* key) {
  auto it = section.find(key);
  if (it == section.end() || it->is_null()) return nullptr;
  return &*it;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError("config field '" + path + "': expected a number");
  return v.get<double>();
}

int get_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError("config field '" + path + "': expected an integer");
  return v.get<int>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError("config field '" + path + "': expected a string");
  return v.get<std::string>();
}

void read_number(const json& section, const char* key, const std::string& prefix, double& out) {
  if (const json* v = find(section, key)) out = get_number(*v, prefix + key);
}

std::optional<double> read_optional_number(const json& section, const char* key, const std::string& prefix) {
  if (const json* v = find(section, key)) return get_number(*v, prefix + key);
  return std::nullopt;
}

// Re-throws std::invalid_argument from a validate() call as a ConfigError.
template <class F>
void validated(F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  validated([&] { system.validate(); });
  validated([&] { bath.validate(); });
  if (!DistanceLawRegistry::builtin().contains(system.kappa_law))
    throw ConfigError("config field 'system.kappa_law': unknown law '" + system.kappa_law + "'");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("config field 'evolution.t_end': must be positive");
  if (dt && (!(*dt > 0.0) || *dt > t_end))
    throw ConfigError("config field 'evolution.dt': must be positive and no larger than t_end");
  if (record_every && *record_every < 1) throw ConfigError("config field 'evolution.record_every': must be positive");
  if (!(sample_interval > 0.0)) throw ConfigError("config field 'evolution.sample_interval': must be positive");
  if (!(stabilization_band > 0.0 && stabilization_band < 1.0))
    throw ConfigError("config field 'analysis.stabilization_band': must lie in (0, 1)");
  if (!initial_fock.empty()) {
    const std::size_t modes = 1 + static_cast<std::size_t>(system.n_layers * (system.n_layers + 3) / 2);
    if (initial_fock.size() != modes)
      throw ConfigError("config field 'evolution.initial_state': need one occupation per mode (" +
                        std::to_string(modes) + ")");
    for (int n : initial_fock)
      if (n < 0 || n >= system.cutoff)
        throw ConfigError("config field 'evolution.initial_state': occupation outside the Fock cutoff");
  }
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, "", kTopKeys);
  RunConfig cfg;

  if (const json* sys = find(doc, "system")) {
    check_keys(*sys, "system", kSystemKeys);
    const std::string p = "system.";
    if (const json* v = find(*sys, "n_layers")) cfg.system.n_layers = get_integer(*v, p + "n_layers");
    if (const json* v = find(*sys, "cutoff")) cfg.system.cutoff = get_integer(*v, p + "cutoff");
    if (const json* v = find(*sys, "kappa_law")) cfg.system.kappa_law = get_string(*v, p + "kappa_law");
    read_number(*sys, "omega_cell", p, cfg.system.omega_cell);
    read_number(*sys, "g", p, cfg.system.g);
    read_number(*sys, "t_e", p, cfg.system.t_e);
    read_number(*sys, "s", p, cfg.system.s);
    cfg.system.omega_c = read_optional_number(*sys, "omega_c", p).value_or(cfg.system.omega_cell);
    cfg.system.drive_frequency = read_optional_number(*sys, "drive_frequency", p).value_or(cfg.system.omega_cell);
    cfg.system.drive_amplitude = read_optional_number(*sys, "drive_amplitude", p).value_or(10.0 * cfg.system.g);
  } else {
    cfg.system.drive_amplitude = 10.0 * cfg.system.g;
  }

  if (const json* bath = find(doc, "bath")) {
    check_keys(*bath, "bath", kBathKeys);
    const std::string p = "bath.";
    read_number(*bath, "gamma", p, cfg.bath.gamma);
    read_number(*bath, "omega0", p, cfg.bath.omega0);
    read_number(*bath, "temperature", p, cfg.bath.temperature);
    read_number(*bath, "omega_k", p, cfg.bath.omega_k);
    try {
      if (const json* v = find(*bath, "dissipator")) cfg.bath.mode = parse_dissipator_mode(get_string(*v, p + "dissipator"));
      if (const json* v = find(*bath, "channel_basis"))
        cfg.bath.basis = parse_channel_basis(get_string(*v, p + "channel_basis"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config field 'bath': ") + e.what());
    }
  }

  if (const json* evo = find(doc, "evolution")) {
    check_keys(*evo, "evolution", kEvolutionKeys);
    const std::string p = "evolution.";
    read_number(*evo, "t_end", p, cfg.t_end);
    read_number(*evo, "sample_interval", p, cfg.sample_interval);
    if (const json* v = find(*evo, "dt")) {
      if (!(v->is_string() && v->get<std::string>() == "auto")) cfg.dt = get_number(*v, p + "dt");
    }
    if (const json* v = find(*evo, "record_every")) {
      if (!(v->is_string() && v->get<std::string>() == "auto")) cfg.record_every = get_integer(*v, p + "record_every");
    }
    if (const json* v = find(*evo, "initial_state")) {
      if (v->is_string()) {
        if (v->get<std::string>() != "vacuum")
          throw ConfigError("config field 'evolution.initial_state': expected \"vacuum\" or {\"fock\": [...]}");
      } else if (v->is_object() && v->contains("fock") && (*v)["fock"].is_array() && v->size() == 1) {
        for (const json& n : (*v)["fock"]) cfg.initial_fock.push_back(get_integer(n, p + "initial_state.fock"));
        if (std::all_of(cfg.initial_fock.begin(), cfg.initial_fock.end(), [](int n) { return n == 0; }))
          cfg.initial_fock.clear();
      } else {
        throw ConfigError("config field 'evolution.initial_state': expected \"vacuum\" or {\"fock\": [...]}");
      }
    }
  }

  if (const json* an = find(doc, "analysis")) {
    check_keys(*an, "analysis", kAnalysisKeys);
    read_number(*an, "stabilization_band", "analysis.", cfg.stabilization_band);
  }

  cfg.validate();
  return cfg;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based; translate to line/column for the diagnostic.
    std::size_t line = 1, column = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < upto; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << path.string() << ":" << line << ":" << column << ": JSON parse error: " << e.what();
    throw ConfigError(os.str());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  try {
    return parse_config(doc);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json to_json(const RunConfig& c) {
  json doc;
  doc["system"] = {
      {"n_layers", c.system.n_layers},
      {"omega_c", c.system.omega_c},
      {"omega_cell", c.system.omega_cell},
      {"g", c.system.g},
      {"t_e", c.system.t_e},
      {"s", c.system.s},
      {"drive_amplitude", c.system.drive_amplitude},
      {"drive_frequency", c.system.drive_frequency},
      {"cutoff", c.system.cutoff},
      {"kappa_law", c.system.kappa_law},
  };
  doc["bath"] = {
      {"gamma", c.bath.gamma},
      {"omega0", c.bath.omega0},
      {"temperature", c.bath.temperature},
      {"omega_k", c.bath.omega_k},
      {"dissipator", to_string(c.bath.mode)},
      {"channel_basis", to_string(c.bath.basis)},
  };
  json evo = {{"t_end", c.t_end}, {"sample_interval", c.sample_interval}};
  evo["dt"] = c.dt ? json(*c.dt) : json("auto");
  evo["record_every"] = c.record_every ? json(*c.record_every) : json("auto");
  evo["initial_state"] = c.initial_fock.empty() ? json("vacuum") : json{{"fock", c.initial_fock}};
  doc["evolution"] = evo;
  doc["analysis"] = {{"stabilization_band", c.stabilization_band}};
  return doc;
}

void apply_overrides(RunConfig& config, const Overrides& overrides) {
  if (overrides.cutoff) config.system.cutoff = *overrides.cutoff;
  if (overrides.dissipator) config.bath.mode = *overrides.dissipator;
  if (overrides.channel_basis) config.bath.basis = *overrides.channel_basis;
  if (overrides.stabilization_band) config.stabilization_band = *overrides.stabilization_band;
  config.validate();
}

}  // namespace qbcharge
