#include "phasesync/compare.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "phasesync/error.hpp"

namespace phasesync {
namespace {

double censored(const Summary& s, double t_end) { return s.convergence_time.value_or(t_end); }

double convergence_or_inf(const Summary& s) {
  return s.convergence_time.value_or(std::numeric_limits<double>::infinity());
}

MethodStats aggregate(std::string name, const std::vector<Summary>& runs, double t_end) {
  MethodStats st;
  st.method = std::move(name);
  st.n_seeds = runs.size();
  st.convergence_min = st.amplitude_min = std::numeric_limits<double>::infinity();
  st.convergence_max = st.amplitude_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : runs) {
    if (s.convergence_time) ++st.converged;
    const double c = censored(s, t_end);
    st.convergence_mean += c;
    st.convergence_min = std::min(st.convergence_min, c);
    st.convergence_max = std::max(st.convergence_max, c);
    st.amplitude_mean += s.steady_state_amplitude;
    st.amplitude_min = std::min(st.amplitude_min, s.steady_state_amplitude);
    st.amplitude_max = std::max(st.amplitude_max, s.steady_state_amplitude);
  }
  st.convergence_mean /= static_cast<double>(runs.size());
  st.amplitude_mean /= static_cast<double>(runs.size());
  return st;
}

}  // namespace

MethodSet MethodSet::around(const ActuationMethod& method) {
  MethodSet set;
  if (const auto* m = std::get_if<OptimizedSpin>(&method)) {
    set.optimized_spin = *m;
    set.constant_time.max_speed = m->max_speed;
  } else if (const auto* m = std::get_if<ConstantTime>(&method)) {
    set.constant_time = *m;
    set.optimized_spin.max_speed = m->max_speed;
  } else if (const auto* m = std::get_if<ConstantFrequency>(&method)) {
    set.constant_frequency = *m;
  }
  return set;
}

const MethodStats& Comparison::row(std::string_view method) const {
  for (const auto& r : rows) {
    if (r.method == method) return r;
  }
  throw InvalidInput("no comparison row for method " + std::string(method));
}

double Comparison::ordering(std::string_view first, std::string_view second,
                            std::string_view statistic) const {
  for (const auto& o : orderings) {
    if (o.first == first && o.second == second && o.statistic == statistic) return o.fraction;
  }
  throw InvalidInput("no ordering " + std::string(first) + " vs " + std::string(second));
}

Comparison compare_methods(const ExperimentConfig& base, std::span<const std::uint64_t> seeds,
                           const MethodSet& methods, unsigned max_threads) {
  if (seeds.empty()) throw InvalidInput("compare_methods: seed list is empty");

  const auto variants = methods.all();
  std::vector<ExperimentConfig> configs;
  configs.reserve(variants.size() * seeds.size());
  for (const auto& m : variants) {
    for (std::uint64_t seed : seeds) {
      ExperimentConfig c = base;
      c.method = m;
      c.seed = seed;
      configs.push_back(std::move(c));
    }
  }
  const auto summaries = run_summaries(configs, max_threads);

  Comparison out;
  out.seeds.assign(seeds.begin(), seeds.end());
  const std::size_t n = seeds.size();
  for (std::size_t m = 0; m < variants.size(); ++m) {
    out.per_seed.emplace_back(summaries.begin() + static_cast<std::ptrdiff_t>(m * n),
                              summaries.begin() + static_cast<std::ptrdiff_t>((m + 1) * n));
    out.rows.push_back(
        aggregate(std::string(method_name(variants[m])), out.per_seed.back(), base.t_end));
  }

  for (std::size_t a = 0; a < variants.size(); ++a) {
    for (std::size_t b = 0; b < variants.size(); ++b) {
      if (a == b) continue;
      std::size_t conv_hits = 0;
      std::size_t amp_hits = 0;
      for (std::size_t s = 0; s < n; ++s) {
        const auto& x = out.per_seed[a][s];
        const auto& y = out.per_seed[b][s];
        if (convergence_or_inf(x) >= convergence_or_inf(y)) ++conv_hits;
        if (x.steady_state_amplitude >= y.steady_state_amplitude) ++amp_hits;
      }
      const double denom = static_cast<double>(n);
      out.orderings.push_back({out.rows[a].method, out.rows[b].method, "convergence_time",
                               static_cast<double>(conv_hits) / denom});
      out.orderings.push_back({out.rows[a].method, out.rows[b].method, "steady_state_amplitude",
                               static_cast<double>(amp_hits) / denom});
    }
  }
  return out;
}

Comparison compare_methods(const ExperimentConfig& base, std::span<const std::uint64_t> seeds,
                           unsigned max_threads) {
  return compare_methods(base, seeds, MethodSet::around(base.method), max_threads);
}

std::vector<Summary> sweep_gains(const ExperimentConfig& base, std::span<const double> gains,
                                 unsigned max_threads) {
  if (gains.empty()) throw InvalidConfig("gains", "list is empty");
  std::set<double> seen;
  std::vector<ExperimentConfig> configs;
  for (double g : gains) {
    if (!(g > 0.0 && g <= 1.0)) {
      throw InvalidConfig("gains", "gain " + std::to_string(g) + " outside (0, 1]");
    }
    if (!seen.insert(g).second) {
      throw InvalidConfig("gains", "duplicate gain " + std::to_string(g));
    }
    ExperimentConfig c = base;
    c.coupling.gain = g;
    configs.push_back(std::move(c));
  }
  return run_summaries(configs, max_threads);
}

}  // namespace phasesync
