#pragma once

#include <compare>
#include <numbers>
#include <span>

namespace phasesync {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Comparison tolerance for angles, in radians.
inline constexpr double kAngleTolerance = 1e-9;

/// A heading on the circle, always in [0, 2π).
class Phase {
 public:
  constexpr Phase() noexcept = default;

  /// Reduces any finite angle into [0, 2π). Throws InvalidInput otherwise.
  static Phase from_radians(double x);

  constexpr double radians() const noexcept { return value_; }

  friend constexpr auto operator<=>(Phase, Phase) noexcept = default;

 private:
  constexpr explicit Phase(double normalized) noexcept : value_(normalized) {}

  double value_ = 0.0;
};

/// Signed shortest-path displacement in (−π, π].
class PhaseDelta {
 public:
  constexpr PhaseDelta() noexcept = default;

  /// Reduces any finite angle into (−π, π]. Throws InvalidInput otherwise.
  static PhaseDelta from_radians(double x);

  constexpr double radians() const noexcept { return value_; }

  friend constexpr auto operator<=>(PhaseDelta, PhaseDelta) noexcept = default;

 private:
  constexpr explicit PhaseDelta(double normalized) noexcept : value_(normalized) {}

  double value_ = 0.0;
};

Phase wrap(double x);

/// Rotates `p` by `radians` and wraps the result.
Phase rotate(Phase p, double radians);

/// Shortest signed turn taking `from` onto `to`. A separation of exactly π resolves to +π.
PhaseDelta circ_dist(Phase from, Phase to);

/// Length of the smallest arc holding every phase: 2π minus the largest circular gap.
/// Zero exactly when all phases coincide. Throws InvalidInput on an empty list.
double containing_arc(std::span<const Phase> phases);

/// Σ |gᵢ − 2π/N| over the N circular gaps between sorted phases. Zero at a perfect splay.
/// Throws InvalidInput on an empty list.
double splay_error(std::span<const Phase> phases);

}  // namespace phasesync
