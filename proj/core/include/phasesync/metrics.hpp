#pragma once

#include <cstdint>
#include <optional>

#include "phasesync/trace.hpp"

namespace phasesync {

/// Thresholds for deriving a Summary from a trace.
struct AnalysisConfig {
  double epsilon = 0.05;        // rad
  double hold = 5.0;            // s
  double tail_fraction = 0.25;  // (0, 1]

  void validate() const;
};

struct Summary {
  std::optional<double> convergence_time;
  std::optional<std::uint64_t> rounds_to_converge;  // slots
  double steady_state_amplitude = 0.0;
  double final_metric = 0.0;
  bool truncated = false;

  friend bool operator==(const Summary&, const Summary&) = default;
};

/// Earliest record time t with metric < epsilon at every record in [t, t + hold].
/// The window must end inside the trace. Throws InvalidInput on an empty trace.
std::optional<double> convergence_time(const Trace& trace, double epsilon, double hold);

/// max − min of the metric over the final `tail_fraction` of records (at least one).
/// Records with no live agents are skipped.
double steady_state_amplitude(const Trace& trace, double tail_fraction);

Summary summarize(const Trace& trace, const AnalysisConfig& analysis, double slot_period,
                  bool truncated);

}  // namespace phasesync
