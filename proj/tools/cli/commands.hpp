#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace phasesync::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitIo = 3,
};

struct CommonOptions {
  std::filesystem::path config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

/// Writes agent_<id>.csv, metric.csv, summary.json and manifest.json into `out`.
int cmd_run(const CommonOptions& opts, std::ostream& log, std::ostream& err);

/// Writes comparison.csv, orderings.csv, per_seed.csv and manifest.json.
/// Seeds are seed, seed + 1, ..., seed + n_seeds − 1.
int cmd_compare(const CommonOptions& opts, std::int64_t n_seeds, std::ostream& log,
                std::ostream& err, unsigned max_threads = 0);

/// Writes sweep.csv (one summary row per gain) and manifest.json.
int cmd_sweep(const CommonOptions& opts, const std::vector<double>& gains, std::ostream& log,
              std::ostream& err, unsigned max_threads = 0);

}  // namespace phasesync::cli
