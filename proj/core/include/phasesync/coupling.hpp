#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

#include "phasesync/phase.hpp"

namespace phasesync {

using AgentId = std::uint32_t;

enum class CouplingMode { Sync, Desync };

std::string_view to_string(CouplingMode mode) noexcept;
std::optional<CouplingMode> parse_coupling_mode(std::string_view text) noexcept;

struct CouplingConfig {
  CouplingMode mode = CouplingMode::Sync;
  double gain = 0.5;  // (0, 1] in both modes

  /// Throws InvalidConfig naming "coupling.gain" when out of range.
  void validate() const;
};

/// What one agent last heard from each peer, plus its own current phase.
class PhaseTable {
 public:
  struct Entry {
    Phase phase;
    double heard_at = 0.0;
  };

  PhaseTable(AgentId owner, Phase own_phase, double t = 0.0);

  AgentId owner() const noexcept { return owner_; }

  /// Stores a heard broadcast, replacing any older entry for `id`.
  void record(AgentId id, Phase phase, double t);
  void set_own(Phase phase, double t) { record(owner_, phase, t); }
  void erase(AgentId id);

  bool contains(AgentId id) const { return entries_.contains(id); }
  std::optional<Entry> find(AgentId id) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<AgentId, Entry>& entries() const noexcept { return entries_; }

 private:
  AgentId owner_;
  std::map<AgentId, Entry> entries_;
};

/// Fractional pursuit of the broadcaster along the shortest arc: gain · circ_dist(own, heard).
PhaseDelta sync_response(Phase own, Phase heard, double gain);

/// Moves the owner toward the midpoint of its circular neighbours in `table`.
/// Entries are ordered by phase, ties by ascending id. With two entries the target
/// is the antipode of the peer; with one entry the response is zero.
PhaseDelta desync_response(AgentId own_id, const PhaseTable& table, double gain);

}  // namespace phasesync
