#include "cli/config_io.hpp"

#include <fstream>
#include <set>
#include <string>

#include "phasesync/error.hpp"

namespace phasesync::cli {
namespace {

using nlohmann::json;

// Integer literal that is not negative, whichever way the parser stored it.
bool is_count(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

// Reads typed fields from one JSON object and rejects keys nobody asked for.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw InvalidConfig(where(), "expected an object");
  }

  std::string where(const std::string& key = {}) const {
    if (key.empty()) return path_.empty() ? "config" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!obj_.contains(key)) throw InvalidConfig(where(key), "missing required field");
    return obj_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw InvalidConfig(where(key), "expected a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : (seen_.insert(key), fallback);
  }

  std::uint64_t unsigned_int(const std::string& key) {
    const json& v = raw(key);
    if (!is_count(v)) throw InvalidConfig(where(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw InvalidConfig(where(key), "expected a string");
    return v.get<std::string>();
  }

  void finish() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.contains(key)) throw InvalidConfig(where(key), "unknown key");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

Phase phase_at(const json& v, const std::string& field) {
  if (!v.is_number()) throw InvalidConfig(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidConfig(field, "must be finite");
  return wrap(x);
}

CouplingConfig parse_coupling(const json& obj) {
  Fields f(obj, "coupling");
  CouplingConfig c;
  const auto mode = parse_coupling_mode(f.text("mode"));
  if (!mode) throw InvalidConfig("coupling.mode", "expected \"sync\" or \"desync\"");
  c.mode = *mode;
  c.gain = f.number("gain");
  f.finish();
  return c;
}

MethodSet parse_method(const json& obj, ActuationMethod& selected) {
  Fields f(obj, "method");
  MethodSet set;
  const std::string kind = f.text("kind");
  const double max_speed = f.number_or("max_speed", set.optimized_spin.max_speed);
  set.optimized_spin.max_speed = max_speed;
  set.constant_time.max_speed = max_speed;
  set.constant_time.turn_duration = f.number_or("turn_duration", set.constant_time.turn_duration);
  set.constant_frequency.angular_speed =
      f.number_or("angular_speed", set.constant_frequency.angular_speed);
  f.finish();

  if (kind == "optimized_spin") {
    selected = set.optimized_spin;
  } else if (kind == "constant_time") {
    selected = set.constant_time;
  } else if (kind == "constant_frequency") {
    selected = set.constant_frequency;
  } else {
    throw InvalidConfig("method.kind",
                        "expected optimized_spin, constant_time or constant_frequency");
  }
  for (const auto& m : set.all()) validate(m);
  return set;
}

TopologyEvent parse_event(const json& obj, const std::string& path) {
  Fields f(obj, path);
  TopologyEvent e;
  e.time = f.number("time");
  const json& agent = f.raw("agent");
  if (!is_count(agent)) throw InvalidConfig(f.where("agent"), "expected an agent id");
  e.agent = agent.get<AgentId>();
  const std::string kind = f.text("kind");
  if (kind == "fail") {
    e.kind = Fail{};
  } else if (kind == "join") {
    e.kind = Join{phase_at(f.raw("initial_phase"), f.where("initial_phase"))};
  } else {
    throw InvalidConfig(f.where("kind"), "expected \"fail\" or \"join\"");
  }
  f.finish();
  return e;
}

NetworkConfig parse_network(const json& obj) {
  Fields f(obj, "network");
  NetworkConfig n;
  n.slot_period = f.number_or("slot_period", n.slot_period);
  n.loss_prob = f.number_or("loss_prob", n.loss_prob);
  if (f.has("topology_events")) {
    const json& events = f.raw("topology_events");
    if (!events.is_array()) throw InvalidConfig("network.topology_events", "expected an array");
    for (std::size_t i = 0; i < events.size(); ++i) {
      n.topology_events.push_back(
          parse_event(events[i], "network.topology_events[" + std::to_string(i) + "]"));
    }
  }
  f.finish();
  return n;
}

InitRule parse_init(const json& obj) {
  Fields f(obj, "init");
  const std::string kind = f.text("kind");
  InitRule rule;
  if (kind == "equally_spaced") {
    rule = EquallySpaced{};
  } else if (kind == "identical") {
    rule = Identical{phase_at(f.raw("angle"), "init.angle")};
  } else if (kind == "explicit") {
    const json& list = f.raw("phases");
    if (!list.is_array()) throw InvalidConfig("init.phases", "expected an array");
    Explicit ex;
    for (std::size_t i = 0; i < list.size(); ++i) {
      ex.phases.push_back(phase_at(list[i], "init.phases[" + std::to_string(i) + "]"));
    }
    rule = std::move(ex);
  } else if (kind == "random_uniform") {
    rule = RandomUniform{};
  } else {
    throw InvalidConfig("init.kind",
                        "expected equally_spaced, identical, explicit or random_uniform");
  }
  f.finish();
  return rule;
}

AnalysisConfig parse_analysis(const json& obj) {
  Fields f(obj, "analysis");
  AnalysisConfig a;
  a.epsilon = f.number_or("epsilon", a.epsilon);
  a.hold = f.number_or("hold", a.hold);
  a.tail_fraction = f.number_or("tail_fraction", a.tail_fraction);
  f.finish();
  return a;
}

json method_json(const ActuationMethod& method) {
  json j{{"kind", std::string(method_name(method))}};
  if (const auto* m = std::get_if<OptimizedSpin>(&method)) {
    j["max_speed"] = m->max_speed;
  } else if (const auto* m = std::get_if<ConstantTime>(&method)) {
    j["turn_duration"] = m->turn_duration;
    j["max_speed"] = m->max_speed;
  } else if (const auto* m = std::get_if<ConstantFrequency>(&method)) {
    j["angular_speed"] = m->angular_speed;
  }
  return j;
}

}  // namespace

ParsedConfig parse_config(const json& doc) {
  Fields f(doc, "");
  ExperimentConfig cfg;

  const json& n = f.raw("n_agents");
  if (!is_count(n) || n.get<std::uint64_t>() > 1'000'000) {
    throw InvalidConfig("n_agents", "expected a positive integer");
  }
  cfg.n_agents = n.get<std::uint32_t>();
  cfg.coupling = parse_coupling(f.raw("coupling"));

  MethodSet methods = MethodSet::around(cfg.method);
  if (f.has("method")) methods = parse_method(f.raw("method"), cfg.method);

  if (f.has("network")) cfg.network = parse_network(f.raw("network"));
  if (f.has("init")) cfg.init = parse_init(f.raw("init"));
  cfg.dt = f.number_or("dt", cfg.dt);
  cfg.t_end = f.number_or("t_end", cfg.t_end);
  if (f.has("seed")) cfg.seed = f.unsigned_int("seed");
  cfg.heading_noise_std = f.number_or("heading_noise_std", cfg.heading_noise_std);
  if (f.has("analysis")) cfg.analysis = parse_analysis(f.raw("analysis"));
  f.finish();

  cfg.validate();
  return {std::move(cfg), methods};
}

ParsedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("config", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidConfig("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& config) {
  json events = json::array();
  for (const auto& e : config.network.topology_events) {
    json ev{{"time", e.time}, {"agent", e.agent}};
    if (const auto* join = std::get_if<Join>(&e.kind)) {
      ev["kind"] = "join";
      ev["initial_phase"] = join->initial_phase.radians();
    } else {
      ev["kind"] = "fail";
    }
    events.push_back(std::move(ev));
  }

  json init{{"kind", std::string(init_name(config.init))}};
  if (const auto* id = std::get_if<Identical>(&config.init)) {
    init["angle"] = id->angle.radians();
  } else if (const auto* ex = std::get_if<Explicit>(&config.init)) {
    json phases = json::array();
    for (Phase p : ex->phases) phases.push_back(p.radians());
    init["phases"] = std::move(phases);
  }

  return json{
      {"n_agents", config.n_agents},
      {"coupling", {{"mode", std::string(to_string(config.coupling.mode))},
                    {"gain", config.coupling.gain}}},
      {"method", method_json(config.method)},
      {"network", {{"slot_period", config.network.slot_period},
                   {"loss_prob", config.network.loss_prob},
                   {"topology_events", std::move(events)}}},
      {"init", std::move(init)},
      {"dt", config.dt},
      {"t_end", config.t_end},
      {"seed", config.seed},
      {"heading_noise_std", config.heading_noise_std},
      {"analysis", {{"epsilon", config.analysis.epsilon},
                    {"hold", config.analysis.hold},
                    {"tail_fraction", config.analysis.tail_fraction}}},
  };
}

}  // namespace phasesync::cli
