#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phasesync/engine.hpp"

namespace phasesync {

/// One parameterisation of each actuation method.
struct MethodSet {
  OptimizedSpin optimized_spin;
  ConstantTime constant_time;
  ConstantFrequency constant_frequency;

  /// Defaults, overridden by whatever `method` carries. max_speed is shared by
  /// OptimizedSpin and ConstantTime.
  static MethodSet around(const ActuationMethod& method);

  std::array<ActuationMethod, 3> all() const {
    return {optimized_spin, constant_time, constant_frequency};
  }
};

/// Aggregates over seeds. Runs that never converge count as t_end in the
/// convergence columns ("censored"), and `converged` says how many did.
struct MethodStats {
  std::string method;
  std::size_t n_seeds = 0;
  std::size_t converged = 0;
  double convergence_mean = 0.0;
  double convergence_min = 0.0;
  double convergence_max = 0.0;
  double amplitude_mean = 0.0;
  double amplitude_min = 0.0;
  double amplitude_max = 0.0;
};

/// Fraction of seeds where `statistic`(first) ≥ `statistic`(second).
/// A missing convergence time compares as +∞.
struct OrderingStat {
  std::string first;
  std::string second;
  std::string statistic;  // "convergence_time" or "steady_state_amplitude"
  double fraction = 0.0;
};

struct Comparison {
  std::vector<std::uint64_t> seeds;
  std::vector<MethodStats> rows;                  // optimized_spin, constant_time, constant_frequency
  std::vector<std::vector<Summary>> per_seed;     // [method][seed]
  std::vector<OrderingStat> orderings;            // every ordered pair, both statistics

  const MethodStats& row(std::string_view method) const;
  double ordering(std::string_view first, std::string_view second,
                  std::string_view statistic) const;
};

/// Runs `base` under each method in `methods` for every seed (seed overrides base.seed).
/// Throws InvalidInput when `seeds` is empty.
Comparison compare_methods(const ExperimentConfig& base, std::span<const std::uint64_t> seeds,
                           const MethodSet& methods, unsigned max_threads = 0);

Comparison compare_methods(const ExperimentConfig& base, std::span<const std::uint64_t> seeds,
                           unsigned max_threads = 0);

/// One run per gain at base.seed. Gains must be distinct and in (0, 1].
std::vector<Summary> sweep_gains(const ExperimentConfig& base, std::span<const double> gains,
                                 unsigned max_threads = 0);

}  // namespace phasesync
