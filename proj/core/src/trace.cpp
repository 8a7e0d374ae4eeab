#include "phasesync/trace.hpp"

#include <limits>

namespace phasesync {

double mode_metric(CouplingMode mode, std::span<const Phase> live_phases) {
  if (live_phases.empty()) return std::numeric_limits<double>::quiet_NaN();
  return mode == CouplingMode::Sync ? containing_arc(live_phases) : splay_error(live_phases);
}

double recompute_metric(CouplingMode mode, const TraceRecord& record) {
  std::vector<Phase> live;
  for (const auto& a : record.agents) {
    if (a.alive) live.push_back(a.phase);
  }
  return mode_metric(mode, live);
}

}  // namespace phasesync
