#include "phasesync/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <string>
#include <thread>

#include "phasesync/error.hpp"

namespace phasesync {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Slot and event times within this fraction of dt of a tick's end belong to the next tick.
constexpr double kBoundarySlack = 1e-9;

double round_to_nanos(double t) { return std::round(t * 1e9) / 1e9; }

struct Planned {
  double delta = 0.0;
  bool clamped = false;
};

// Everything a tick produces besides the new agent states.
struct TickLog {
  std::optional<AgentId> broadcaster;
  std::map<AgentId, Planned> planned;
  std::vector<std::string> events;
};

void require(bool ok, const char* field, const char* message) {
  if (!ok) throw InvalidConfig(field, message);
}

std::vector<Phase> initial_phases(const ExperimentConfig& cfg, Rng& rng) {
  const std::uint32_t n = cfg.n_agents;
  return std::visit(
      overloaded{
          [&](const EquallySpaced&) {
            std::vector<Phase> out;
            for (std::uint32_t i = 0; i < n; ++i) out.push_back(wrap(kTwoPi * i / n));
            return out;
          },
          [&](const Identical& r) { return std::vector<Phase>(n, r.angle); },
          [&](const Explicit& r) { return r.phases; },
          [&](const RandomUniform&) {
            std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
            std::vector<Phase> out;
            for (std::uint32_t i = 0; i < n; ++i) out.push_back(wrap(uniform(rng)));
            return out;
          },
      },
      cfg.init);
}

TraceRecord snapshot(const SimState& state, double t, TickLog log) {
  TraceRecord rec;
  rec.t = round_to_nanos(t);
  rec.agents.reserve(state.agents.size());
  for (const auto& a : state.agents) {
    AgentSample sample{a.id, a.phase, a.alive, std::nullopt, false};
    auto it = log.planned.find(a.id);
    if (a.alive && it != log.planned.end()) {
      sample.commanded_delta = it->second.delta;
      sample.clamped = it->second.clamped;
    }
    rec.agents.push_back(sample);
  }
  rec.live_count = state.roster.live().size();
  rec.metric = mode_metric(state.config.coupling.mode, state.live_phases());
  rec.broadcaster = log.broadcaster;
  rec.events = std::move(log.events);
  return rec;
}

void serve_slot(SimState& state, double slot_time, TickLog& log) {
  const auto& cfg = state.config;
  const auto& live = state.roster.live();
  if (live.empty()) return;

  const AgentId sender = next_broadcaster(state.slot, live);
  const AgentState* tx = state.find_agent(sender);
  Phase payload = tx->phase;
  if (cfg.heading_noise_std > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg.heading_noise_std);
    payload = rotate(payload, noise(state.rng));
  }
  log.broadcaster = sender;
  log.events.push_back("broadcast:" + std::to_string(sender));

  std::vector<AgentId> receivers;
  for (AgentId id : live) {
    if (id != sender) receivers.push_back(id);
  }
  const Broadcast msg{sender, payload, slot_time};
  const auto delivered = deliver(msg, receivers, cfg.network.loss_prob, state.rng);

  for (AgentId id : receivers) {
    if (std::find(delivered.begin(), delivered.end(), id) == delivered.end()) {
      log.events.push_back("lost:" + std::to_string(id));
    }
  }

  for (AgentId id : delivered) {
    AgentState& rx = *state.find_agent(id);
    rx.table.record(sender, payload, slot_time);
    rx.table.set_own(rx.phase, slot_time);

    const double gain = cfg.coupling.gain;
    const PhaseDelta delta = cfg.coupling.mode == CouplingMode::Sync
                                 ? sync_response(rx.phase, payload, gain)
                                 : desync_response(id, rx.table, gain);
    // A fresh plan always replaces whatever turn was in progress.
    const TurnProfile profile = plan_turn(delta, cfg.method);
    rx.profile = profile.active() ? std::optional(profile) : std::nullopt;

    log.planned[id] = Planned{delta.radians(), profile.clamped};
    log.events.push_back("rx:" + std::to_string(id));
    if (profile.clamped) log.events.push_back("clamp:" + std::to_string(id));
  }
}

}  // namespace

std::string_view init_name(const InitRule& init) noexcept {
  return std::visit(overloaded{
                        [](const EquallySpaced&) { return std::string_view("equally_spaced"); },
                        [](const Identical&) { return std::string_view("identical"); },
                        [](const Explicit&) { return std::string_view("explicit"); },
                        [](const RandomUniform&) { return std::string_view("random_uniform"); },
                    },
                    init);
}

void ExperimentConfig::validate() const {
  require(n_agents >= 1, "n_agents", "must be at least 1");
  coupling.validate();
  phasesync::validate(method);
  network.validate(n_agents);
  for (std::size_t i = 0; i < network.topology_events.size(); ++i) {
    if (network.topology_events[i].agent == 0) {
      throw InvalidConfig("network.topology_events[" + std::to_string(i) + "].agent",
                          "agent ids start at 1");
    }
  }
  require(dt > 0.0 && std::isfinite(dt), "dt", "must be positive and finite");
  require(dt <= network.slot_period, "dt", "must not exceed network.slot_period");
  require(t_end > 0.0 && std::isfinite(t_end), "t_end", "must be positive and finite");
  require(t_end >= network.slot_period, "t_end", "must be at least network.slot_period");
  require(heading_noise_std >= 0.0 && std::isfinite(heading_noise_std), "heading_noise_std",
          "must be finite and non-negative");
  if (const auto* ex = std::get_if<Explicit>(&init)) {
    if (ex->phases.size() != n_agents) {
      throw InvalidConfig("init.phases", "length " + std::to_string(ex->phases.size()) +
                                             " does not match n_agents " +
                                             std::to_string(n_agents));
    }
  }
  analysis.validate();
}

std::uint64_t ExperimentConfig::tick_count() const {
  return static_cast<std::uint64_t>(std::ceil(t_end / dt - kBoundarySlack));
}

AgentState* SimState::find_agent(AgentId id) {
  auto it = std::lower_bound(agents.begin(), agents.end(), id,
                             [](const AgentState& a, AgentId v) { return a.id < v; });
  return it != agents.end() && it->id == id ? &*it : nullptr;
}

const AgentState* SimState::find_agent(AgentId id) const {
  return const_cast<SimState*>(this)->find_agent(id);
}

std::vector<Phase> SimState::live_phases() const {
  std::vector<Phase> out;
  for (const auto& a : agents) {
    if (a.alive) out.push_back(a.phase);
  }
  return out;
}

SimState init_experiment(const ExperimentConfig& config) {
  config.validate();
  SimState state{config, {}, Roster(config.n_agents), Rng(config.seed), 0, 0, 0, {}, false};
  state.trace.mode = config.coupling.mode;

  const auto phases = initial_phases(config, state.rng);
  for (std::uint32_t i = 0; i < config.n_agents; ++i) {
    const AgentId id = i + 1;
    state.agents.push_back(AgentState{id, phases[i], std::nullopt, PhaseTable(id, phases[i]), true});
  }
  // Initial headings are set by the operator, so every agent starts knowing all of them.
  for (auto& a : state.agents) {
    for (const auto& peer : state.agents) a.table.record(peer.id, peer.phase, 0.0);
  }

  state.trace.records.push_back(snapshot(state, 0.0, {}));
  return state;
}

void apply_topology_event(SimState& state, const TopologyEvent& event) {
  state.roster.apply(event);
  const AgentId id = event.agent;

  if (std::holds_alternative<Fail>(event.kind)) {
    AgentState& dead = *state.find_agent(id);
    dead.alive = false;
    dead.profile.reset();
    for (auto& a : state.agents) {
      if (a.id != id) a.table.erase(id);
    }
    return;
  }

  const Phase start = std::get<Join>(event.kind).initial_phase;
  AgentState fresh{id, start, std::nullopt, PhaseTable(id, start, event.time), true};
  if (AgentState* existing = state.find_agent(id)) {
    *existing = std::move(fresh);
    return;
  }
  auto pos = std::lower_bound(state.agents.begin(), state.agents.end(), id,
                              [](const AgentState& a, AgentId v) { return a.id < v; });
  state.agents.insert(pos, std::move(fresh));
}

void step(SimState& state) {
  if (state.finished()) return;
  const auto& cfg = state.config;
  const double dt = cfg.dt;
  const double tick_end = static_cast<double>(state.tick + 1) * dt;
  const double cutoff = tick_end - kBoundarySlack * dt;
  TickLog log;

  for (auto& a : state.agents) {
    if (!a.alive || !a.profile) continue;
    const auto r = advance(*a.profile, dt);
    a.phase = rotate(a.phase, r.executed);
    a.profile = r.profile.active() ? std::optional(r.profile) : std::nullopt;
  }

  const double slot_period = cfg.network.slot_period;
  while (static_cast<double>(state.slot) * slot_period < cutoff) {
    serve_slot(state, static_cast<double>(state.slot) * slot_period, log);
    ++state.slot;
  }

  const auto& events = cfg.network.topology_events;
  while (state.next_event < events.size() && events[state.next_event].time < cutoff) {
    const auto& e = events[state.next_event++];
    apply_topology_event(state, e);
    const char* kind = std::holds_alternative<Fail>(e.kind) ? "fail:" : "join:";
    log.events.push_back(kind + std::to_string(e.agent));
  }

  state.trace.records.push_back(snapshot(state, tick_end, std::move(log)));
  ++state.tick;
  if (state.roster.live().empty()) state.truncated = true;
}

RunResult run(const ExperimentConfig& config) {
  SimState state = init_experiment(config);
  while (!state.finished()) step(state);
  Summary summary =
      summarize(state.trace, config.analysis, config.network.slot_period, state.truncated);
  return {std::move(state.trace), summary};
}

std::vector<Summary> run_summaries(std::span<const ExperimentConfig> configs,
                                   unsigned max_threads) {
  for (const auto& c : configs) c.validate();

  std::vector<Summary> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = run(configs[i]).summary;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned threads = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, configs.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace phasesync
