#pragma once

// Single runs and parameter sweeps: simulation, output files and manifests.

#include "qbcharge/config.hpp"
#include "qbcharge/csv_io.hpp"
#include "qbcharge/metrics.hpp"
#include "qbcharge/presets.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qbcharge {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitConfig = 2, kExitIntegration = 3 };

struct RunOutcome {
  RunConfig config;  ///< dt and record_every resolved
  Trajectory trajectory;
  std::optional<FailureMarker> failure;
  double wall_clock_seconds = 0.0;
};

/// Fills an automatic dt and record_every. An automatic dt is shrunk so that
/// dt * record_every equals sample_interval exactly.
RunConfig resolve_steps(const RunConfig& config);

/// Integrates one configuration. Integration failures are captured in the
/// outcome; configuration problems throw ConfigError.
RunOutcome simulate(const RunConfig& config);

/// The resolved config plus a "manifest" block; parse_config accepts it.
nlohmann::json run_manifest(const RunOutcome& outcome, const std::string& csv_name,
                            const nlohmann::json& extra = nlohmann::json::object());

struct SweepPoint {
  double value = 0.0;
  std::string csv_name;
  std::optional<SignalMetrics> metrics;  ///< empty for failed points
};

/// Metrics of the ergotropy_B10 column of a trajectory CSV.
SignalMetrics csv_metrics(const TrajectoryTable& table, double band);

inline constexpr const char* kSummaryHeader =
    "value,peak_ergotropy,time_of_peak,stabilization_time,oscillation_amplitude,final_ergotropy,status,csv";

std::string summary_csv(const std::vector<SweepPoint>& points);

/// File name of sweep point `index`, e.g. "d_001_0.5.csv".
std::string sweep_point_name(const std::string& parameter, std::size_t index, double value);

int run_single(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
               const Overrides& overrides, std::ostream& log);

/// workers == 0 means one per hardware thread.
int run_sweep(const std::filesystem::path& spec_path, const std::filesystem::path& out_dir,
              const Overrides& overrides, unsigned workers, std::ostream& log);

}  // namespace qbcharge
