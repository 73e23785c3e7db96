#include "qbcharge/runner.hpp"

#include "qbcharge/model.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#ifndef QBCHARGE_VERSION
#define QBCHARGE_VERSION "unknown"
#endif

namespace qbcharge {

using nlohmann::json;

namespace {

struct Assembled {
  HamiltonianParts parts;
  OperatorMatrix generator;
  ChannelSet channels;
};

Assembled assemble(const RunConfig& config) {
  HamiltonianParts parts = [&] {
    try {
      return build_hamiltonian(config.system);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config field 'system': ") + e.what());
    }
  }();
  OperatorMatrix h_rf = rotating_frame(parts, config.system.drive_frequency);
  const OperatorMatrix& channel_h =
      config.bath.basis == ChannelBasis::static_hamiltonian ? parts.h_static : h_rf;
  ChannelSet channels = jump_channels(channel_h, config.bath);
  return {std::move(parts), std::move(h_rf), std::move(channels)};
}

RunConfig resolve_with(const RunConfig& config, const Assembled& a) {
  RunConfig r = config;
  if (!r.dt) {
    const double bound = std::min(default_time_step(a.generator, a.channels), r.t_end);
    if (r.record_every) {
      r.dt = bound;
    } else {
      const int every = std::max(1, static_cast<int>(std::ceil(r.sample_interval / bound)));
      r.record_every = every;
      r.dt = std::min(r.sample_interval / every, r.t_end);
    }
  }
  if (!r.record_every) r.record_every = std::max(1, static_cast<int>(std::lround(r.sample_interval / *r.dt)));
  return r;
}

ObservableSpec observables_for(const RunConfig& config, const HamiltonianParts& parts) {
  if (config.system.n_layers < 1) throw ConfigError("config field 'system.n_layers': need at least one layer of cells");
  ObservableSpec obs{parts.layout, {}, config.system.omega_cell, parts.h_static};
  obs.tracked_modes = {parts.layout.index_of(cell_label(1, 0)), parts.layout.index_of(cell_label(1, 1))};
  return obs;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == '+') c = 'p';
  return s;
}

}  // namespace

RunConfig resolve_steps(const RunConfig& config) {
  config.validate();
  return resolve_with(config, assemble(config));
}

RunOutcome simulate(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const Assembled a = assemble(config);
  RunOutcome out;
  out.config = resolve_with(config, a);

  EvolutionSpec spec;
  spec.t_end = out.config.t_end;
  spec.dt = *out.config.dt;
  spec.record_every = *out.config.record_every;
  if (!out.config.initial_fock.empty()) spec.initial_state = fock_projector(out.config.initial_fock, a.parts.layout);
  const ObservableSpec obs = observables_for(out.config, a.parts);

  try {
    out.trajectory = evolve(spec, a.generator, a.channels, obs);
  } catch (const IntegrationFailure& e) {
    out.trajectory = e.partial();
    out.failure = FailureMarker{e.failure_time(), e.what()};
  }
  out.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

json run_manifest(const RunOutcome& outcome, const std::string& csv_name, const json& extra) {
  json doc = to_json(outcome.config);
  const Trajectory& t = outcome.trajectory;
  json m = {
      {"version", QBCHARGE_VERSION},
      {"csv", csv_name},
      {"status", outcome.failure ? "failed" : "ok"},
      {"wall_clock_seconds", outcome.wall_clock_seconds},
      {"diagnostics",
       {{"samples", t.samples.size()},
        {"max_trace_drift", t.max_trace_drift},
        {"min_eigenvalue", t.min_eigenvalue},
        {"max_hermiticity_defect", t.max_hermiticity_defect}}},
  };
  if (outcome.failure) {
    m["failure"] = {{"time", outcome.failure->time},
                    {"reason", outcome.failure->reason},
                    {"last_good_time", t.samples.empty() ? 0.0 : t.samples.back().time}};
  }
  for (const auto& item : extra.items()) m[item.key()] = item.value();
  doc["manifest"] = m;
  return doc;
}

SignalMetrics csv_metrics(const TrajectoryTable& table, double band) {
  return signal_metrics(table.column("time"), table.column("ergotropy_B10"), band);
}

std::string summary_csv(const std::vector<SweepPoint>& points) {
  std::string out = kSummaryHeader;
  out += '\n';
  for (const SweepPoint& p : points) {
    out += format_value(p.value);
    if (p.metrics) {
      const SignalMetrics& m = *p.metrics;
      for (double v : {m.peak, m.time_of_peak, m.stabilization_time, m.oscillation_amplitude, m.final_value})
        out += "," + format_value(v);
      out += ",ok";
    } else {
      out += ",,,,,,failed";
    }
    out += "," + p.csv_name + "\n";
  }
  return out;
}

std::string sweep_point_name(const std::string& parameter, std::size_t index, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%s_%03zu_%.6g.csv", parameter.c_str(), index, value);
  return sanitize(buffer);
}

int run_single(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
               const Overrides& overrides, std::ostream& log) {
  RunConfig config = load_config(config_path);
  apply_overrides(config, overrides);
  std::filesystem::create_directories(out_dir);

  const RunOutcome outcome = simulate(config);
  const std::string stem = config_path.stem().string();
  const std::string csv_name = stem + ".csv";
  write_file_atomic(out_dir / csv_name, trajectory_csv(outcome.trajectory, outcome.failure));
  write_file_atomic(out_dir / (stem + ".manifest.json"), run_manifest(outcome, csv_name).dump(2) + "\n");

  if (outcome.failure) {
    log << "integration failed: " << outcome.failure->reason << "\n";
    return kExitIntegration;
  }
  log << "wrote " << (out_dir / csv_name).string() << " (" << outcome.trajectory.samples.size() << " samples, "
      << outcome.wall_clock_seconds << " s)\n";
  return kExitOk;
}

int run_sweep(const std::filesystem::path& spec_path, const std::filesystem::path& out_dir,
              const Overrides& overrides, unsigned workers, std::ostream& log) {
  const SweepSpec spec = load_sweep(spec_path, overrides);
  std::filesystem::create_directories(out_dir);
  const double band = spec.base.stabilization_band;

  std::vector<SweepPoint> points(spec.values.size());
  std::vector<std::string> errors(spec.values.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto work = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      SweepPoint& p = points[k];
      p.value = spec.values[k];
      p.csv_name = sweep_point_name(spec.parameter, k, p.value);
      try {
        const RunOutcome outcome = simulate(with_parameter(spec.base, spec.parameter, p.value));
        const std::string csv = trajectory_csv(outcome.trajectory, outcome.failure);
        write_file_atomic(out_dir / p.csv_name, csv);
        const json extra = {{"sweep",
                             {{"preset", spec.preset}, {"parameter", spec.parameter}, {"value", p.value}, {"index", k}}}};
        const std::string manifest_name = p.csv_name.substr(0, p.csv_name.size() - 4) + ".manifest.json";
        write_file_atomic(out_dir / manifest_name, run_manifest(outcome, p.csv_name, extra).dump(2) + "\n");
        if (outcome.failure) {
          errors[k] = outcome.failure->reason;
        } else {
          p.metrics = csv_metrics(parse_trajectory_csv(csv), band);
        }
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
      std::lock_guard<std::mutex> lock(log_mutex);
      log << spec.parameter << "=" << format_value(p.value) << ": "
          << (errors[k].empty() ? "ok" : "failed (" + errors[k] + ")") << "\n";
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(points.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  write_file_atomic(out_dir / "summary.csv", summary_csv(points));
  const bool any_failed = std::any_of(errors.begin(), errors.end(), [](const std::string& e) { return !e.empty(); });
  return any_failed ? kExitIntegration : kExitOk;
}

}  // namespace qbcharge
