#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include "phasesync/coupling.hpp"
#include "phasesync/phase.hpp"

namespace phasesync {

/// The per-run generator. Owned by exactly one run.
using Rng = std::mt19937_64;

struct Broadcast {
  AgentId sender = 0;
  Phase payload;      // sender's heading at transmit time, after heading noise
  double time = 0.0;  // s
};

struct Fail {};
struct Join {
  Phase initial_phase;
};

struct TopologyEvent {
  double time = 0.0;
  AgentId agent = 0;
  std::variant<Fail, Join> kind;
};

struct NetworkConfig {
  double slot_period = 0.5;  // s
  double loss_prob = 0.0;
  std::vector<TopologyEvent> topology_events;  // non-decreasing in time

  /// Checks the scalar fields and event ordering, and replays the events against
  /// the initial roster {1..n_agents} so that every Fail/Join is legal.
  void validate(std::uint32_t n_agents) const;
};

/// Live and known agent ids. Failed agents stay known but leave the live set.
class Roster {
 public:
  Roster() = default;
  explicit Roster(std::uint32_t n_agents);

  /// Throws InvalidEvent on Fail of a non-live id or Join of a live id.
  void apply(const TopologyEvent& event);

  const std::set<AgentId>& live() const noexcept { return live_; }
  const std::set<AgentId>& known() const noexcept { return known_; }
  bool is_live(AgentId id) const { return live_.contains(id); }

 private:
  std::set<AgentId> live_;
  std::set<AgentId> known_;
};

/// Round robin over ascending live ids: the (slot mod |live|)-th id.
/// Throws NoLiveAgents on an empty set.
AgentId next_broadcaster(std::uint64_t slot_index, const std::set<AgentId>& live_ids);

/// Drops each receiver independently with probability `loss_prob`. Receivers are
/// drawn in the order given; no randomness is consumed when loss_prob is 0 or 1.
/// Throws InvalidInput if the sender is among the receivers.
std::vector<AgentId> deliver(const Broadcast& b, std::span<const AgentId> receivers,
                             double loss_prob, Rng& rng);

}  // namespace phasesync
