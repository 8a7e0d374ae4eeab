#include "phasesync/network.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "phasesync/error.hpp"

namespace phasesync {

void NetworkConfig::validate(std::uint32_t n_agents) const {
  if (!(slot_period > 0.0) || !std::isfinite(slot_period)) {
    throw InvalidConfig("network.slot_period", "must be positive and finite");
  }
  if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) {
    throw InvalidConfig("network.loss_prob", "must lie in [0, 1]");
  }
  Roster roster(n_agents);
  for (std::size_t i = 0; i < topology_events.size(); ++i) {
    const auto& e = topology_events[i];
    const std::string field = "network.topology_events[" + std::to_string(i) + "]";
    if (!(e.time >= 0.0) || !std::isfinite(e.time)) {
      throw InvalidConfig(field + ".time", "must be finite and non-negative");
    }
    if (i > 0 && e.time < topology_events[i - 1].time) {
      throw InvalidConfig(field + ".time", "events must be sorted by time");
    }
    try {
      roster.apply(e);
    } catch (const InvalidEvent& err) {
      throw InvalidConfig(field, err.what());
    }
  }
}

Roster::Roster(std::uint32_t n_agents) {
  for (AgentId id = 1; id <= n_agents; ++id) {
    live_.insert(id);
    known_.insert(id);
  }
}

void Roster::apply(const TopologyEvent& event) {
  const AgentId id = event.agent;
  if (std::holds_alternative<Fail>(event.kind)) {
    if (!live_.contains(id)) {
      throw InvalidEvent("fail targets agent " + std::to_string(id) + " which is not live");
    }
    live_.erase(id);
    return;
  }
  if (live_.contains(id)) {
    throw InvalidEvent("join targets agent " + std::to_string(id) + " which is already live");
  }
  live_.insert(id);
  known_.insert(id);
}

AgentId next_broadcaster(std::uint64_t slot_index, const std::set<AgentId>& live_ids) {
  if (live_ids.empty()) throw NoLiveAgents();
  auto it = live_ids.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(slot_index % live_ids.size()));
  return *it;
}

std::vector<AgentId> deliver(const Broadcast& b, std::span<const AgentId> receivers,
                             double loss_prob, Rng& rng) {
  if (std::find(receivers.begin(), receivers.end(), b.sender) != receivers.end()) {
    throw InvalidInput("sender " + std::to_string(b.sender) + " listed as its own receiver");
  }
  if (loss_prob <= 0.0) return {receivers.begin(), receivers.end()};
  if (loss_prob >= 1.0) return {};

  std::bernoulli_distribution dropped(loss_prob);
  std::vector<AgentId> survivors;
  for (AgentId r : receivers) {
    if (!dropped(rng)) survivors.push_back(r);
  }
  return survivors;
}

}  // namespace phasesync
