#include "qbcharge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbcharge {

SignalMetrics signal_metrics(const std::vector<double>& times, const std::vector<double>& values, double band) {
  if (times.empty() || times.size() != values.size())
    throw std::invalid_argument("signal_metrics: need equally sized, nonempty time and value lists");
  if (!(band >= 0.0)) throw std::invalid_argument("signal_metrics: band must be nonnegative");

  SignalMetrics m;
  const auto peak_it = std::max_element(values.begin(), values.end());
  const auto peak_index = static_cast<std::size_t>(peak_it - values.begin());
  m.peak = *peak_it;
  m.time_of_peak = times[peak_index];
  m.final_value = values.back();

  const auto [lo, hi] = std::minmax_element(values.begin() + static_cast<std::ptrdiff_t>(peak_index), values.end());
  m.oscillation_amplitude = *hi - *lo;

  const double tolerance = band * std::abs(m.final_value);
  std::size_t settled = values.size() - 1;
  while (settled > 0 && std::abs(values[settled - 1] - m.final_value) <= tolerance) --settled;
  m.stabilization_time = times[settled];
  return m;
}

}  // namespace qbcharge
