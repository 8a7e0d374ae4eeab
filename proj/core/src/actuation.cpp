#include "phasesync/actuation.hpp"

#include <cmath>
#include <string>

#include "phasesync/error.hpp"

namespace phasesync {
namespace {

// Leftover turn time below this is treated as finished.
constexpr double kTimeSnap = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidConfig(field, "must be positive and finite, got " + std::to_string(value));
  }
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

std::string_view method_name(const ActuationMethod& method) noexcept {
  return std::visit(overloaded{
                        [](const OptimizedSpin&) { return std::string_view("optimized_spin"); },
                        [](const ConstantTime&) { return std::string_view("constant_time"); },
                        [](const ConstantFrequency&) {
                          return std::string_view("constant_frequency");
                        },
                    },
                    method);
}

void validate(const ActuationMethod& method) {
  std::visit(overloaded{
                 [](const OptimizedSpin& m) { require_positive(m.max_speed, "method.max_speed"); },
                 [](const ConstantTime& m) {
                   require_positive(m.turn_duration, "method.turn_duration");
                   require_positive(m.max_speed, "method.max_speed");
                 },
                 [](const ConstantFrequency& m) {
                   require_positive(m.angular_speed, "method.angular_speed");
                 },
             },
             method);
}

TurnProfile plan_turn(PhaseDelta delta, const ActuationMethod& method) {
  validate(method);
  if (delta.radians() == 0.0) return {};

  const double magnitude = std::abs(delta.radians());
  const int direction = sign_of(delta.radians());

  return std::visit(
      overloaded{
          [&](const OptimizedSpin& m) {
            return TurnProfile{direction, m.max_speed, magnitude / m.max_speed, delta, false};
          },
          [&](const ConstantTime& m) {
            const double speed = magnitude / m.turn_duration;
            if (speed <= m.max_speed) {
              return TurnProfile{direction, speed, m.turn_duration, delta, false};
            }
            const auto truncated =
                PhaseDelta::from_radians(direction * m.max_speed * m.turn_duration);
            return TurnProfile{direction, m.max_speed, m.turn_duration, truncated, true};
          },
          [&](const ConstantFrequency& m) {
            return TurnProfile{direction, m.angular_speed, magnitude / m.angular_speed, delta,
                               false};
          },
      },
      method);
}

AdvanceResult advance(const TurnProfile& profile, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("advance: dt must be positive, got " + std::to_string(dt));
  if (!profile.active()) return {0.0, TurnProfile{}};

  if (dt >= profile.remaining - kTimeSnap) {
    return {profile.direction * profile.speed * profile.remaining, TurnProfile{}};
  }
  TurnProfile next = profile;
  next.remaining -= dt;
  return {profile.direction * profile.speed * dt, next};
}

}  // namespace phasesync
