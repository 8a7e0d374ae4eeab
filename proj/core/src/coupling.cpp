#include "phasesync/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "phasesync/error.hpp"

namespace phasesync {
namespace {

void require_gain(double gain) {
  if (!(gain > 0.0 && gain <= 1.0)) {
    throw InvalidConfig("coupling.gain", "must lie in (0, 1], got " + std::to_string(gain));
  }
}

PhaseDelta scaled(PhaseDelta d, double gain) {
  return PhaseDelta::from_radians(gain * d.radians());
}

}  // namespace

std::string_view to_string(CouplingMode mode) noexcept {
  return mode == CouplingMode::Sync ? "sync" : "desync";
}

std::optional<CouplingMode> parse_coupling_mode(std::string_view text) noexcept {
  if (text == "sync") return CouplingMode::Sync;
  if (text == "desync") return CouplingMode::Desync;
  return std::nullopt;
}

void CouplingConfig::validate() const { require_gain(gain); }

PhaseTable::PhaseTable(AgentId owner, Phase own_phase, double t) : owner_(owner) {
  entries_.emplace(owner, Entry{own_phase, t});
}

void PhaseTable::record(AgentId id, Phase phase, double t) { entries_[id] = Entry{phase, t}; }

void PhaseTable::erase(AgentId id) {
  if (id == owner_) throw InvalidInput("cannot erase the owner's own table entry");
  entries_.erase(id);
}

std::optional<PhaseTable::Entry> PhaseTable::find(AgentId id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

PhaseDelta sync_response(Phase own, Phase heard, double gain) {
  require_gain(gain);
  return scaled(circ_dist(own, heard), gain);
}

PhaseDelta desync_response(AgentId own_id, const PhaseTable& table, double gain) {
  require_gain(gain);
  const auto own = table.find(own_id);
  if (!own) throw InvalidInput("agent " + std::to_string(own_id) + " absent from phase table");

  const std::size_t n = table.size();
  if (n == 1) return PhaseDelta{};

  if (n == 2) {
    for (const auto& [id, entry] : table.entries()) {
      if (id != own_id) return scaled(circ_dist(own->phase, rotate(entry.phase, kPi)), gain);
    }
  }

  std::vector<std::pair<double, AgentId>> ring;
  ring.reserve(n);
  for (const auto& [id, entry] : table.entries()) ring.emplace_back(entry.phase.radians(), id);
  std::sort(ring.begin(), ring.end());

  const auto self = static_cast<std::size_t>(
      std::find_if(ring.begin(), ring.end(), [&](const auto& e) { return e.second == own_id; }) -
      ring.begin());
  const std::size_t pred = (self + n - 1) % n;

  // Forward gap after ring[i]; the last one wraps so the gaps sum to 2π.
  auto gap_after = [&](std::size_t i) {
    if (i + 1 < n) return ring[i + 1].first - ring[i].first;
    return kTwoPi - (ring[n - 1].first - ring[0].first);
  };

  const double forward = gap_after(pred) + gap_after(self);
  const Phase target = wrap(ring[pred].first + 0.5 * forward);
  return scaled(circ_dist(own->phase, target), gain);
}

}  // namespace phasesync
