#pragma once

#include <string_view>
#include <variant>

#include "phasesync/phase.hpp"

namespace phasesync {

/// Magnitude first, then direction; always turns at full speed.
struct OptimizedSpin {
  double max_speed = kPi / 2.0;  // rad/s
};

/// Every turn lasts `turn_duration`; speed scales with the magnitude, capped at `max_speed`.
struct ConstantTime {
  double turn_duration = 1.0;    // s
  double max_speed = kPi / 2.0;  // rad/s
};

/// Every turn runs at `angular_speed`; duration scales with the magnitude.
struct ConstantFrequency {
  double angular_speed = kPi / 6.0;  // rad/s
};

using ActuationMethod = std::variant<OptimizedSpin, ConstantTime, ConstantFrequency>;

/// "optimized_spin", "constant_time" or "constant_frequency".
std::string_view method_name(const ActuationMethod& method) noexcept;

/// Throws InvalidConfig naming the first non-positive parameter.
void validate(const ActuationMethod& method);

/// Executable form of a commanded turn.
struct TurnProfile {
  int direction = 0;       // −1, 0, +1
  double speed = 0.0;      // rad/s
  double remaining = 0.0;  // s
  PhaseDelta planned_delta;
  bool clamped = false;  // ConstantTime speed cap truncated the commanded delta

  bool active() const noexcept { return remaining > 0.0; }
};

TurnProfile plan_turn(PhaseDelta delta, const ActuationMethod& method);

struct AdvanceResult {
  double executed = 0.0;  // signed radians turned during this step
  TurnProfile profile;
};

/// Runs `profile` for `dt` seconds, clipping at the remaining time. Throws InvalidInput if dt ≤ 0.
AdvanceResult advance(const TurnProfile& profile, double dt);

}  // namespace phasesync
