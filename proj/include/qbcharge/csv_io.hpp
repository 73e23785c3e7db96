#pragma once

// Trajectory CSV files.
//
//   time,ergotropy_B10,ergotropy_B11,ergotropy_global,energy_total,trace,purity
//
// Values carry 12 significant digits. A run that stopped early ends with a
// marker row "#FAILED,<time>,<reason>" after the last good sample.

#include "qbcharge/dynamics.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qbcharge {

inline constexpr const char* kTrajectoryHeader =
    "time,ergotropy_B10,ergotropy_B11,ergotropy_global,energy_total,trace,purity";

struct FailureMarker {
  double time = 0.0;
  std::string reason;
};

/// printf "%.12g"
std::string format_value(double value);

std::string trajectory_csv(const Trajectory& trajectory, const std::optional<FailureMarker>& failure = std::nullopt);

struct TrajectoryTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::optional<FailureMarker> failure;

  /// Throws std::invalid_argument naming the missing column.
  std::vector<double> column(const std::string& name) const;
};

/// Parses CSV text; throws std::invalid_argument on a schema violation.
TrajectoryTable parse_trajectory_csv(const std::string& text);
TrajectoryTable read_trajectory_csv(const std::filesystem::path& path);

/// Writes via a sibling temp file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qbcharge
