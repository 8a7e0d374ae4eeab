#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "phasesync/metrics.hpp"
#include "phasesync/trace.hpp"

namespace phasesync::cli {

/// Output could not be written or an artifact could not be read back.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that parses back to exactly `x`; "nan" for NaN.
std::string format_double(double x);

// Per-agent time series: agent_<id>.csv with header
//   t,phase,alive,commanded_delta,clamped
// One row per record in which the agent exists. commanded_delta and clamped are
// empty except on ticks where a new turn was planned.
struct AgentRow {
  double t = 0.0;
  double phase = 0.0;
  bool alive = true;
  std::optional<double> commanded_delta;
  std::optional<bool> clamped;
};

// metric.csv with header t,metric,live_count,broadcaster.
struct MetricRow {
  double t = 0.0;
  double metric = 0.0;
  std::size_t live_count = 0;
  std::optional<AgentId> broadcaster;
};

std::string agent_file_name(AgentId id);

/// Writes one agent file per agent that appears in the trace; returns the file names.
std::vector<std::string> write_agent_files(const std::filesystem::path& dir, const Trace& trace);
void write_metric_csv(const std::filesystem::path& path, const Trace& trace);

nlohmann::json summary_json(const Summary& summary);
Summary summary_from_json(const nlohmann::json& j);

/// Writes `doc` pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json(const std::filesystem::path& path);

/// Writes `text` verbatim. Throws IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

std::vector<AgentRow> read_agent_csv(const std::filesystem::path& path);
std::vector<MetricRow> read_metric_csv(const std::filesystem::path& path);

/// Rebuilds the metric of every metric.csv row from the agent files in `dir`
/// and returns the largest absolute discrepancy. Throws IoError when the files
/// disagree structurally (row counts, timestamps, live counts).
double cross_validate(const std::filesystem::path& dir, CouplingMode mode);

}  // namespace phasesync::cli
