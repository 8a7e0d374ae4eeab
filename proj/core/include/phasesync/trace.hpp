#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "phasesync/coupling.hpp"
#include "phasesync/phase.hpp"

namespace phasesync {

struct AgentSample {
  AgentId id = 0;
  Phase phase;
  bool alive = true;
  std::optional<double> commanded_delta;  // set only on ticks where a new turn was planned
  bool clamped = false;                   // meaningful only with commanded_delta
};

/// Snapshot of the whole network at the end of one tick.
struct TraceRecord {
  double t = 0.0;
  std::vector<AgentSample> agents;  // ascending id, live and failed
  double metric = 0.0;              // mode metric over the live agents; NaN when none are live
  std::size_t live_count = 0;
  std::optional<AgentId> broadcaster;
  std::vector<std::string> events;  // "broadcast:3", "rx:4", "lost:5", "clamp:2", "fail:4", "join:7"
};

struct Trace {
  CouplingMode mode = CouplingMode::Sync;
  std::vector<TraceRecord> records;
};

/// containing_arc for Sync, splay_error for Desync.
double mode_metric(CouplingMode mode, std::span<const Phase> live_phases);

/// Recomputes a record's metric from its live agents.
double recompute_metric(CouplingMode mode, const TraceRecord& record);

}  // namespace phasesync
