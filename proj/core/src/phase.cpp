#include "phasesync/phase.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "phasesync/error.hpp"

namespace phasesync {
namespace {

void require_finite(double x) {
  if (!std::isfinite(x)) throw InvalidInput("angle must be finite, got " + std::to_string(x));
}

std::vector<double> sorted_radians(std::span<const Phase> phases) {
  if (phases.empty()) throw InvalidInput("phase list must be nonempty");
  std::vector<double> out;
  out.reserve(phases.size());
  for (Phase p : phases) out.push_back(p.radians());
  std::sort(out.begin(), out.end());
  return out;
}

// Interior gaps between sorted neighbours, followed by the wrap-around gap.
// The wrap gap is taken as 2π minus the span so that the gaps sum to 2π.
std::vector<double> circular_gaps(const std::vector<double>& sorted) {
  std::vector<double> gaps;
  gaps.reserve(sorted.size());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) gaps.push_back(sorted[i + 1] - sorted[i]);
  gaps.push_back(kTwoPi - (sorted.back() - sorted.front()));
  return gaps;
}

}  // namespace

Phase Phase::from_radians(double x) {
  require_finite(x);
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // r + 2π can round up to exactly 2π for tiny negative r.
  if (r >= kTwoPi) r = 0.0;
  return Phase(r);
}

PhaseDelta PhaseDelta::from_radians(double x) {
  require_finite(x);
  double r = std::fmod(x, kTwoPi);
  if (r > kPi) {
    r -= kTwoPi;
  } else if (r <= -kPi) {
    r += kTwoPi;
  }
  return PhaseDelta(r);
}

Phase wrap(double x) { return Phase::from_radians(x); }

Phase rotate(Phase p, double radians) { return wrap(p.radians() + radians); }

PhaseDelta circ_dist(Phase from, Phase to) {
  // Both inputs lie in [0, 2π), so the raw difference lies in (−2π, 2π).
  double d = to.radians() - from.radians();
  if (d > kPi) {
    d -= kTwoPi;
  } else if (d <= -kPi) {
    d += kTwoPi;
  }
  return PhaseDelta::from_radians(d);
}

double containing_arc(std::span<const Phase> phases) {
  const auto sorted = sorted_radians(phases);
  const double span = sorted.back() - sorted.front();
  double widest_interior = 0.0;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    widest_interior = std::max(widest_interior, sorted[i + 1] - sorted[i]);
  }
  // Dropping the wrap gap leaves the plain span; computing it directly keeps
  // the all-equal case exactly zero.
  if (kTwoPi - span >= widest_interior) return span;
  return kTwoPi - widest_interior;
}

double splay_error(std::span<const Phase> phases) {
  const auto sorted = sorted_radians(phases);
  const double ideal = kTwoPi / static_cast<double>(sorted.size());
  double total = 0.0;
  for (double g : circular_gaps(sorted)) total += std::abs(g - ideal);
  return total;
}

}  // namespace phasesync
