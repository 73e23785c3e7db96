#pragma once

// Summary metrics of one recorded signal.

#include <vector>

namespace qbcharge {

struct SignalMetrics {
  double peak = 0.0;
  double time_of_peak = 0.0;          ///< first sample attaining the peak
  double stabilization_time = 0.0;    ///< first time after which |v - final| <= band * |final|
  double oscillation_amplitude = 0.0; ///< max - min from the peak sample onward
  double final_value = 0.0;
};

/// Throws std::invalid_argument on empty or mismatched input.
SignalMetrics signal_metrics(const std::vector<double>& times, const std::vector<double>& values, double band);

}  // namespace qbcharge
