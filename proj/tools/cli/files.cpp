#include "cli/files.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace phasesync::cli {
namespace fs = std::filesystem;
namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void close_out(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s, const fs::path& path) {
  if (s == "nan") return std::nan("");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError(path.string() + ": bad number '" + s + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& s, const fs::path& path) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError(path.string() + ": bad integer '" + s + "'");
  }
  return v;
}

bool parse_flag(const std::string& s, const fs::path& path) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw IoError(path.string() + ": bad flag '" + s + "'");
}

// Rows of a CSV file after checking its header; each row has exactly `width` cells.
std::vector<std::vector<std::string>> read_csv(const fs::path& path, const std::string& header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw IoError(path.string() + ": expected header '" + header + "'");
  }
  const std::size_t width = split_csv(header).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    auto cells = split_csv(line);
    if (cells.size() != width) throw IoError(path.string() + ": malformed row '" + line + "'");
    rows.push_back(std::move(cells));
  }
  return rows;
}

constexpr const char* kAgentHeader = "t,phase,alive,commanded_delta,clamped";
constexpr const char* kMetricHeader = "t,metric,live_count,broadcaster";

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string agent_file_name(AgentId id) { return "agent_" + std::to_string(id) + ".csv"; }

std::vector<std::string> write_agent_files(const fs::path& dir, const Trace& trace) {
  std::map<AgentId, std::ostringstream> bodies;
  for (const auto& rec : trace.records) {
    for (const auto& a : rec.agents) {
      auto& out = bodies[a.id];
      out << format_double(rec.t) << ',' << format_double(a.phase.radians()) << ','
          << (a.alive ? '1' : '0') << ',';
      if (a.commanded_delta) {
        out << format_double(*a.commanded_delta) << ',' << (a.clamped ? '1' : '0');
      } else {
        out << ',';
      }
      out << '\n';
    }
  }
  std::vector<std::string> names;
  for (const auto& [id, body] : bodies) {
    const auto name = agent_file_name(id);
    const auto path = dir / name;
    auto out = open_out(path);
    out << kAgentHeader << '\n' << body.str();
    close_out(out, path);
    names.push_back(name);
  }
  return names;
}

void write_metric_csv(const fs::path& path, const Trace& trace) {
  auto out = open_out(path);
  out << kMetricHeader << '\n';
  for (const auto& rec : trace.records) {
    out << format_double(rec.t) << ',' << format_double(rec.metric) << ',' << rec.live_count
        << ',';
    if (rec.broadcaster) out << *rec.broadcaster;
    out << '\n';
  }
  close_out(out, path);
}

nlohmann::json summary_json(const Summary& s) {
  nlohmann::json j;
  j["convergence_time"] = s.convergence_time ? nlohmann::json(*s.convergence_time) : nullptr;
  j["rounds_to_converge"] =
      s.rounds_to_converge ? nlohmann::json(*s.rounds_to_converge) : nullptr;
  j["steady_state_amplitude"] = s.steady_state_amplitude;
  j["final_metric"] = s.final_metric;
  j["truncated"] = s.truncated;
  return j;
}

Summary summary_from_json(const nlohmann::json& j) {
  try {
    Summary s;
    if (!j.at("convergence_time").is_null()) {
      s.convergence_time = j.at("convergence_time").get<double>();
    }
    if (!j.at("rounds_to_converge").is_null()) {
      s.rounds_to_converge = j.at("rounds_to_converge").get<std::uint64_t>();
    }
    s.steady_state_amplitude = j.at("steady_state_amplitude").get<double>();
    s.final_metric = j.at("final_metric").get<double>();
    s.truncated = j.at("truncated").get<bool>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed summary: ") + e.what());
  }
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  close_out(out, path);
}

std::vector<AgentRow> read_agent_csv(const fs::path& path) {
  std::vector<AgentRow> rows;
  for (const auto& c : read_csv(path, kAgentHeader)) {
    AgentRow r;
    r.t = parse_double(c[0], path);
    r.phase = parse_double(c[1], path);
    r.alive = parse_flag(c[2], path);
    if (!c[3].empty()) r.commanded_delta = parse_double(c[3], path);
    if (!c[4].empty()) r.clamped = parse_flag(c[4], path);
    if (r.commanded_delta.has_value() != r.clamped.has_value()) {
      throw IoError(path.string() + ": commanded_delta and clamped must be set together");
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<MetricRow> read_metric_csv(const fs::path& path) {
  std::vector<MetricRow> rows;
  for (const auto& c : read_csv(path, kMetricHeader)) {
    MetricRow r;
    r.t = parse_double(c[0], path);
    r.metric = parse_double(c[1], path);
    r.live_count = parse_uint(c[2], path);
    if (!c[3].empty()) r.broadcaster = static_cast<AgentId>(parse_uint(c[3], path));
    rows.push_back(r);
  }
  return rows;
}

double cross_validate(const fs::path& dir, CouplingMode mode) {
  const auto metrics = read_metric_csv(dir / "metric.csv");

  // time -> live phases gathered across all agent files
  std::map<double, std::vector<Phase>> live_by_time;
  std::map<double, std::size_t> present_by_time;
  const std::regex agent_file(R"(agent_\d+\.csv)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (!std::regex_match(name, agent_file)) continue;
    for (const auto& row : read_agent_csv(entry.path())) {
      ++present_by_time[row.t];
      if (row.alive) live_by_time[row.t].push_back(Phase::from_radians(row.phase));
    }
  }

  double worst = 0.0;
  for (const auto& m : metrics) {
    if (!present_by_time.contains(m.t)) {
      throw IoError("no agent rows at t=" + format_double(m.t));
    }
    const auto& live = live_by_time[m.t];
    if (live.size() != m.live_count) {
      throw IoError("live_count mismatch at t=" + format_double(m.t));
    }
    const double recomputed = mode_metric(mode, live);
    if (std::isnan(recomputed) && std::isnan(m.metric)) continue;
    worst = std::max(worst, std::abs(recomputed - m.metric));
    if (std::isnan(recomputed) != std::isnan(m.metric)) {
      throw IoError("metric presence mismatch at t=" + format_double(m.t));
    }
  }
  if (present_by_time.size() != metrics.size()) {
    throw IoError("agent files and metric.csv cover different timestamps");
  }
  return worst;
}

}  // namespace phasesync::cli
