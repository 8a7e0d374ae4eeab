#include "phasesync/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phasesync/error.hpp"

namespace phasesync {
namespace {

// Record times are rounded to the nanosecond; windows compare with this slack.
constexpr double kTimeSlack = 1e-9;

}  // namespace

void AnalysisConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidConfig("analysis.epsilon", "must be positive");
  if (!(hold >= 0.0) || !std::isfinite(hold)) {
    throw InvalidConfig("analysis.hold", "must be finite and non-negative");
  }
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw InvalidConfig("analysis.tail_fraction", "must lie in (0, 1]");
  }
}

std::optional<double> convergence_time(const Trace& trace, double epsilon, double hold) {
  const auto& recs = trace.records;
  if (recs.empty()) throw InvalidInput("convergence_time: empty trace");

  // The earliest valid t is always the start of a below-epsilon run, so only run
  // starts need checking: the run must outlast the hold window.
  std::size_t i = 0;
  while (i < recs.size()) {
    if (!(recs[i].metric < epsilon)) {
      ++i;
      continue;
    }
    const double start = recs[i].t;
    std::size_t j = i;
    while (j + 1 < recs.size() && recs[j + 1].metric < epsilon) ++j;
    const bool ends_trace = j + 1 == recs.size();
    if (ends_trace) {
      if (recs[j].t >= start + hold - kTimeSlack) return start;
      return std::nullopt;
    }
    // recs[j + 1] is the first record back above epsilon.
    if (recs[j + 1].t > start + hold + kTimeSlack) return start;
    i = j + 1;
  }
  return std::nullopt;
}

double steady_state_amplitude(const Trace& trace, double tail_fraction) {
  const auto& recs = trace.records;
  if (recs.empty()) return 0.0;
  const auto n = recs.size();
  auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
  tail = std::clamp<std::size_t>(tail, 1, n);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = n - tail; i < n; ++i) {
    const double m = recs[i].metric;
    if (!std::isfinite(m)) continue;
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return hi >= lo ? hi - lo : 0.0;
}

Summary summarize(const Trace& trace, const AnalysisConfig& analysis, double slot_period,
                  bool truncated) {
  Summary s;
  s.truncated = truncated;
  if (trace.records.empty()) return s;

  s.convergence_time = convergence_time(trace, analysis.epsilon, analysis.hold);
  if (s.convergence_time) {
    const double slots = *s.convergence_time / slot_period;
    s.rounds_to_converge = static_cast<std::uint64_t>(std::ceil(slots - 1e-9));
  }
  s.steady_state_amplitude = steady_state_amplitude(trace, analysis.tail_fraction);
  for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
    if (std::isfinite(it->metric)) {
      s.final_metric = it->metric;
      break;
    }
  }
  return s;
}

}  // namespace phasesync
