#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace phasesync {

/// Bad argument to a pure operation (non-finite angle, empty phase list, unknown agent).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration value violates its invariant. `field()` names the offending field.
class InvalidConfig : public std::invalid_argument {
 public:
  InvalidConfig(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Fail on an absent agent or Join on a present one.
class InvalidEvent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoLiveAgents : public std::runtime_error {
 public:
  NoLiveAgents() : std::runtime_error("no live agents") {}
};

}  // namespace phasesync
