#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "phasesync/actuation.hpp"
#include "phasesync/coupling.hpp"
#include "phasesync/metrics.hpp"
#include "phasesync/network.hpp"
#include "phasesync/trace.hpp"

namespace phasesync {

/// Agent with id i starts at 2π(i − 1)/N: the worst case for synchronization.
struct EquallySpaced {};
/// Every agent starts at `angle`: the worst case for desynchronization.
struct Identical {
  Phase angle;
};
/// phases[i] belongs to agent i + 1.
struct Explicit {
  std::vector<Phase> phases;
};
/// iid uniform on [0, 2π), drawn from the run's generator.
struct RandomUniform {};

using InitRule = std::variant<EquallySpaced, Identical, Explicit, RandomUniform>;

std::string_view init_name(const InitRule& init) noexcept;

struct ExperimentConfig {
  std::uint32_t n_agents = 6;  // ids 1..n_agents
  CouplingConfig coupling;
  ActuationMethod method = OptimizedSpin{};
  NetworkConfig network;
  InitRule init = EquallySpaced{};
  double dt = 0.05;
  double t_end = 120.0;
  std::uint64_t seed = 0;
  double heading_noise_std = 0.0;
  AnalysisConfig analysis;

  /// Throws InvalidConfig naming the first violated field.
  void validate() const;

  /// Number of fixed steps between 0 and t_end.
  std::uint64_t tick_count() const;
};

struct AgentState {
  AgentId id = 0;
  Phase phase;
  std::optional<TurnProfile> profile;
  PhaseTable table;
  bool alive = true;
};

struct SimState {
  ExperimentConfig config;
  std::vector<AgentState> agents;  // ascending id
  Roster roster;
  Rng rng;
  std::uint64_t tick = 0;        // completed steps
  std::uint64_t slot = 0;        // slot boundaries already served
  std::size_t next_event = 0;    // index into config.network.topology_events
  Trace trace;                   // starts with the t = 0 snapshot
  bool truncated = false;        // every agent failed before t_end

  AgentState* find_agent(AgentId id);
  const AgentState* find_agent(AgentId id) const;
  std::vector<Phase> live_phases() const;
  bool finished() const { return truncated || tick >= config.tick_count(); }
};

/// Validates `config`, places the agents and records the initial snapshot.
/// Each table is primed with the initial heading of every agent.
SimState init_experiment(const ExperimentConfig& config);

/// Advances one tick of config.dt: turns, then the slot broadcast (if a slot
/// boundary falls in the tick), then topology events, then one trace record.
void step(SimState& state);

/// Fail freezes the agent and drops it from every table; Join (re)creates it at
/// its initial phase. Throws InvalidEvent on an illegal event.
void apply_topology_event(SimState& state, const TopologyEvent& event);

struct RunResult {
  Trace trace;
  Summary summary;
};

/// Steps from 0 to t_end. Output is a pure function of `config`.
RunResult run(const ExperimentConfig& config);

/// Runs each config independently, in parallel, keeping only the summaries.
/// Results are in input order.
std::vector<Summary> run_summaries(std::span<const ExperimentConfig> configs,
                                   unsigned max_threads = 0);

}  // namespace phasesync
