#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/config_io.hpp"
#include "cli/files.hpp"
#include "phasesync/error.hpp"

namespace phasesync::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("phasesync_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

json sync_doc() {
  return json::parse(R"({
    "n_agents": 6,
    "coupling": {"mode": "sync", "gain": 0.5},
    "method": {"kind": "optimized_spin", "max_speed": 1.5707963267948966},
    "network": {"slot_period": 0.5, "loss_prob": 0.1,
                "topology_events": [{"time": 12.0, "agent": 4, "kind": "fail"}]},
    "init": {"kind": "random_uniform"},
    "dt": 0.05, "t_end": 30.0, "seed": 7, "heading_noise_std": 0.01
  })");
}

fs::path write_config(const fs::path& dir, const json& doc, const std::string& name = "cfg.json") {
  const auto p = dir / name;
  std::ofstream(p) << doc.dump(2);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error_field(const json& doc) {
  try {
    parse_config(doc);
  } catch (const InvalidConfig& e) {
    return e.field();
  }
  return "<accepted>";
}

TEST(ParseConfig, FullDocument) {
  const auto parsed = parse_config(sync_doc());
  const auto& c = parsed.config;
  EXPECT_EQ(c.n_agents, 6u);
  EXPECT_EQ(c.coupling.mode, CouplingMode::Sync);
  EXPECT_TRUE(std::holds_alternative<OptimizedSpin>(c.method));
  EXPECT_EQ(c.network.topology_events.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<RandomUniform>(c.init));
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.heading_noise_std, 0.01);
  EXPECT_EQ(c.analysis.epsilon, 0.05);
}

TEST(ParseConfig, DefaultsForOptionalFields) {
  const auto parsed =
      parse_config(json::parse(R"({"n_agents": 3, "coupling": {"mode": "desync", "gain": 1}})"));
  EXPECT_EQ(parsed.config.dt, 0.05);
  EXPECT_EQ(parsed.config.network.slot_period, 0.5);
  EXPECT_EQ(parsed.methods.constant_frequency.angular_speed, kPi / 6);
}

TEST(ParseConfig, MethodKeysParameteriseEveryMethod) {
  auto doc = sync_doc();
  doc["method"] = {{"kind", "constant_time"}, {"turn_duration", 2.0}, {"angular_speed", 0.3}};
  const auto parsed = parse_config(doc);
  EXPECT_EQ(std::get<ConstantTime>(parsed.config.method).turn_duration, 2.0);
  EXPECT_EQ(parsed.methods.constant_frequency.angular_speed, 0.3);
}

TEST(ParseConfig, RejectsWithFieldPaths) {
  auto doc = sync_doc();
  doc["bogus"] = 1;
  EXPECT_EQ(config_error_field(doc), "bogus");

  doc = sync_doc();
  doc["network"]["jitter"] = 1;
  EXPECT_EQ(config_error_field(doc), "network.jitter");

  doc = sync_doc();
  doc["dt"] = 0.75;
  EXPECT_EQ(config_error_field(doc), "dt");

  doc = sync_doc();
  doc["coupling"]["gain"] = "high";
  EXPECT_EQ(config_error_field(doc), "coupling.gain");

  doc = sync_doc();
  doc.erase("coupling");
  EXPECT_EQ(config_error_field(doc), "coupling");

  doc = sync_doc();
  doc["init"] = {{"kind", "explicit"}, {"phases", {0.0, 1.0}}};
  EXPECT_EQ(config_error_field(doc), "init.phases");

  doc = sync_doc();
  doc["network"]["topology_events"][0]["kind"] = "explode";
  EXPECT_EQ(config_error_field(doc), "network.topology_events[0].kind");

  doc = sync_doc();
  doc["method"]["kind"] = "teleport";
  EXPECT_EQ(config_error_field(doc), "method.kind");

  doc = sync_doc();
  doc["seed"] = -4;
  EXPECT_EQ(config_error_field(doc), "seed");
}

TEST(ParseConfig, ToJsonRoundTrips) {
  auto doc = sync_doc();
  doc["init"] = {{"kind", "explicit"}, {"phases", {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}}};
  doc["network"]["topology_events"].push_back(
      {{"time", 20.0}, {"agent", 4}, {"kind", "join"}, {"initial_phase", 1.5}});
  const auto first = parse_config(doc).config;
  const auto again = parse_config(to_json(first)).config;
  EXPECT_EQ(to_json(first), to_json(again));
}

TEST(FormatDouble, RoundTripsExactly) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    ASSERT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.05), "0.05");
  EXPECT_EQ(format_double(std::nan("")), "nan");
}

TEST(CmdRun, WritesExpectedFilesThatReparse) {
  TempDir tmp;
  auto doc = sync_doc();
  doc["network"]["topology_events"] = json::array();
  doc["init"] = {{"kind", "equally_spaced"}};
  const auto cfg = write_config(tmp.path(), doc);
  std::ostringstream log, err;
  ASSERT_EQ(cmd_run({cfg, tmp.path() / "out", std::nullopt, true}, log, err), kExitOk) << err.str();
  EXPECT_TRUE(log.str().empty());

  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(tmp.path() / "out")) {
    names.insert(e.path().filename().string());
  }
  EXPECT_EQ(names, (std::set<std::string>{"agent_1.csv", "agent_2.csv", "agent_3.csv",
                                          "agent_4.csv", "agent_5.csv", "agent_6.csv",
                                          "metric.csv", "summary.json", "manifest.json"}));

  const auto agent = read_agent_csv(tmp.path() / "out" / "agent_2.csv");
  const auto metric = read_metric_csv(tmp.path() / "out" / "metric.csv");
  EXPECT_EQ(agent.size(), metric.size());
  EXPECT_EQ(metric.size(), 601u);
  EXPECT_FALSE(metric.front().broadcaster.has_value());
  EXPECT_EQ(metric[1].broadcaster, 1u);
  EXPECT_LE(cross_validate(tmp.path() / "out", CouplingMode::Sync), 1e-9);

  const auto summary = summary_from_json(read_json(tmp.path() / "out" / "summary.json"));
  const auto manifest = read_json(tmp.path() / "out" / "manifest.json");
  EXPECT_EQ(manifest.at("seed"), 7);
  EXPECT_EQ(manifest.at("mode"), "sync");
  EXPECT_EQ(manifest.at("files").size(), 9u);
  EXPECT_TRUE(summary.convergence_time.has_value());
}

TEST(CmdRun, ByteIdenticalAcrossInvocations) {
  TempDir tmp;
  const auto cfg = write_config(tmp.path(), sync_doc());
  std::ostringstream log, err;
  ASSERT_EQ(cmd_run({cfg, tmp.path() / "a", std::nullopt, true}, log, err), kExitOk);
  ASSERT_EQ(cmd_run({cfg, tmp.path() / "b", std::nullopt, true}, log, err), kExitOk);
  for (const auto& e : fs::directory_iterator(tmp.path() / "a")) {
    const auto name = e.path().filename();
    if (name == "manifest.json") continue;
    EXPECT_EQ(slurp(e.path()), slurp(tmp.path() / "b" / name)) << name;
  }
  // Agent 4 fails mid-run; its file still spans the whole run.
  const auto rows = read_agent_csv(tmp.path() / "a" / "agent_4.csv");
  EXPECT_TRUE(rows.front().alive);
  EXPECT_FALSE(rows.back().alive);
  EXPECT_LE(cross_validate(tmp.path() / "a", CouplingMode::Sync), 1e-9);
}

TEST(CmdRun, SeedOverrideChangesOutput) {
  TempDir tmp;
  const auto cfg = write_config(tmp.path(), sync_doc());
  std::ostringstream log, err;
  ASSERT_EQ(cmd_run({cfg, tmp.path() / "a", std::nullopt, true}, log, err), kExitOk);
  ASSERT_EQ(cmd_run({cfg, tmp.path() / "b", 8, true}, log, err), kExitOk);
  EXPECT_NE(slurp(tmp.path() / "a" / "metric.csv"), slurp(tmp.path() / "b" / "metric.csv"));
  EXPECT_EQ(read_json(tmp.path() / "b" / "manifest.json").at("seed"), 8);
}

TEST(CmdRun, ConfigErrorsExitTwo) {
  TempDir tmp;
  auto doc = sync_doc();
  doc["dt"] = 1.0;
  const auto cfg = write_config(tmp.path(), doc);
  std::ostringstream log, err;
  EXPECT_EQ(cmd_run({cfg, tmp.path() / "out", std::nullopt, true}, log, err), kExitConfig);
  EXPECT_NE(err.str().find("dt"), std::string::npos);
  EXPECT_NE(err.str().find("slot_period"), std::string::npos);

  std::ostringstream err2;
  EXPECT_EQ(cmd_run({tmp.path() / "missing.json", tmp.path() / "out", std::nullopt, true}, log,
                    err2),
            kExitConfig);

  std::ofstream(tmp.path() / "broken.json") << "{ not json";
  EXPECT_EQ(cmd_run({tmp.path() / "broken.json", tmp.path() / "out", std::nullopt, true}, log,
                    err2),
            kExitConfig);
}

TEST(CmdRun, UnwritableOutputExitsThree) {
  TempDir tmp;
  const auto cfg = write_config(tmp.path(), sync_doc());
  std::ofstream(tmp.path() / "blocker") << "x";
  std::ostringstream log, err;
  EXPECT_EQ(cmd_run({cfg, tmp.path() / "blocker" / "out", std::nullopt, true}, log, err), kExitIo);
}

TEST(CmdCompare, TrivialTableAndValidation) {
  TempDir tmp;
  const auto cfg = write_config(
      tmp.path(), json::parse(R"({"n_agents": 1, "coupling": {"mode": "sync", "gain": 0.5},
                                 "t_end": 10})"));
  std::ostringstream log, err;
  ASSERT_EQ(cmd_compare({cfg, tmp.path() / "cmp", std::nullopt, true}, 1, log, err), kExitOk)
      << err.str();
  const auto table = slurp(tmp.path() / "cmp" / "comparison.csv");
  EXPECT_NE(table.find("optimized_spin,1,1,0,0,0,0,0,0"), std::string::npos) << table;
  EXPECT_NE(table.find("constant_frequency,1,1,0,0,0,0,0,0"), std::string::npos);
  EXPECT_TRUE(fs::exists(tmp.path() / "cmp" / "orderings.csv"));
  EXPECT_TRUE(fs::exists(tmp.path() / "cmp" / "per_seed.csv"));
  EXPECT_TRUE(fs::exists(tmp.path() / "cmp" / "manifest.json"));

  EXPECT_EQ(cmd_compare({cfg, tmp.path() / "cmp0", std::nullopt, true}, 0, log, err), kExitConfig);
}

TEST(CmdSweep, SingleGainMatchesRunSummary) {
  TempDir tmp;
  auto doc = sync_doc();
  doc["coupling"] = {{"mode", "desync"}, {"gain", 0.25}};
  doc["init"] = {{"kind", "identical"}, {"angle", 0.0}};
  const auto cfg = write_config(tmp.path(), doc);
  std::ostringstream log, err;
  ASSERT_EQ(cmd_run({cfg, tmp.path() / "run", std::nullopt, true}, log, err), kExitOk);
  ASSERT_EQ(cmd_sweep({cfg, tmp.path() / "sweep", std::nullopt, true}, {0.25}, log, err), kExitOk);

  const auto summary = summary_json(summary_from_json(read_json(tmp.path() / "run" / "summary.json")));
  std::ifstream in(tmp.path() / "sweep" / "sweep.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header,
            "gain,convergence_time,rounds_to_converge,steady_state_amplitude,final_metric,truncated");
  auto cell = [&](int i) {
    std::stringstream ss(row);
    std::string c;
    for (int k = 0; k <= i; ++k) std::getline(ss, c, ',');
    return c;
  };
  EXPECT_EQ(cell(0), "0.25");
  const auto conv = summary.at("convergence_time");
  EXPECT_EQ(cell(1), conv.is_null() ? "" : format_double(conv.get<double>()));
  EXPECT_EQ(cell(3), format_double(summary.at("steady_state_amplitude").get<double>()));
  EXPECT_EQ(cell(4), format_double(summary.at("final_metric").get<double>()));
}

TEST(CmdSweep, ThreeGainsAndValidation) {
  TempDir tmp;
  const auto cfg = write_config(tmp.path(), sync_doc());
  std::ostringstream log, err;
  ASSERT_EQ(cmd_sweep({cfg, tmp.path() / "s", std::nullopt, true}, {0.25, 0.5, 1.0}, log, err),
            kExitOk);
  std::ifstream in(tmp.path() / "s" / "sweep.csv");
  int lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  EXPECT_EQ(lines, 4);

  EXPECT_EQ(cmd_sweep({cfg, tmp.path() / "d", std::nullopt, true}, {0.5, 0.5}, log, err),
            kExitConfig);
  EXPECT_EQ(cmd_sweep({cfg, tmp.path() / "h", std::nullopt, true}, {1.5}, log, err), kExitConfig);
}

TEST(Readers, RejectMalformedFiles) {
  TempDir tmp;
  std::ofstream(tmp.path() / "m.csv") << "t,metric\n0,1\n";
  EXPECT_THROW(read_metric_csv(tmp.path() / "m.csv"), IoError);
  std::ofstream(tmp.path() / "a.csv") << "t,phase,alive,commanded_delta,clamped\n0,1,2,,\n";
  EXPECT_THROW(read_agent_csv(tmp.path() / "a.csv"), IoError);
  std::ofstream(tmp.path() / "b.csv") << "t,phase,alive,commanded_delta,clamped\n0,1,1,0.5,\n";
  EXPECT_THROW(read_agent_csv(tmp.path() / "b.csv"), IoError);
}

}  // namespace
}  // namespace phasesync::cli
