#include "cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <exception>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cli/config_io.hpp"
#include "cli/files.hpp"
#include "phasesync/compare.hpp"
#include "phasesync/error.hpp"

#ifndef PHASESYNC_VERSION
#define PHASESYNC_VERSION "unknown"
#endif

namespace phasesync::cli {
namespace fs = std::filesystem;
namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string summary_row(const Summary& s) {
  std::ostringstream row;
  row << optional_cell(s.convergence_time) << ',';
  if (s.rounds_to_converge) row << *s.rounds_to_converge;
  row << ',' << format_double(s.steady_state_amplitude) << ',' << format_double(s.final_metric)
      << ',' << (s.truncated ? 1 : 0);
  return row.str();
}

struct Manifest {
  std::string command;
  fs::path config;
  fs::path out;
  std::uint64_t seed = 0;
  CouplingMode mode = CouplingMode::Sync;
  std::string started;
  std::vector<std::string> files;

  nlohmann::json to_json() const {
    auto listed = files;
    listed.push_back("manifest.json");
    return {
        {"command", command},
        {"config_path", config.string()},
        {"output_dir", out.string()},
        {"seed", seed},
        {"mode", std::string(to_string(mode))},
        {"version", PHASESYNC_VERSION},
        {"start_time", started},
        {"end_time", utc_now()},
        {"files", listed},
    };
  }
};

// Shared prologue/epilogue: config loading, output directory, error → exit code.
template <class Body>
int guarded(const CommonOptions& opts, const char* command, std::ostream& err, Body&& body) {
  try {
    ParsedConfig parsed = load_config(opts.config);
    if (opts.seed) parsed.config.seed = *opts.seed;

    std::error_code ec;
    fs::create_directories(opts.out, ec);
    if (ec) throw IoError("cannot create " + opts.out.string() + ": " + ec.message());

    Manifest manifest{command,
                      opts.config,
                      opts.out,
                      parsed.config.seed,
                      parsed.config.coupling.mode,
                      utc_now(),
                      {}};
    body(parsed, manifest.files);
    write_json(opts.out / "manifest.json", manifest.to_json());
    return kExitOk;
  } catch (const InvalidConfig& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int cmd_run(const CommonOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(opts, "run", err, [&](const ParsedConfig& parsed, std::vector<std::string>& files) {
    const auto result = run(parsed.config);
    files = write_agent_files(opts.out, result.trace);
    write_metric_csv(opts.out / "metric.csv", result.trace);
    write_json(opts.out / "summary.json", summary_json(result.summary));
    files.insert(files.end(), {"metric.csv", "summary.json"});

    if (!opts.quiet) {
      log << "run: " << result.trace.records.size() << " records, final metric "
          << format_double(result.summary.final_metric) << ", convergence "
          << (result.summary.convergence_time ? format_double(*result.summary.convergence_time)
                                              : std::string("none"))
          << '\n';
    }
  });
}

int cmd_compare(const CommonOptions& opts, std::int64_t n_seeds, std::ostream& log,
                std::ostream& err, unsigned max_threads) {
  if (n_seeds < 1) {
    err << "config error: seeds: must be at least 1\n";
    return kExitConfig;
  }
  return guarded(opts, "compare", err, [&](const ParsedConfig& parsed,
                                           std::vector<std::string>& files) {
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(n_seeds));
    std::iota(seeds.begin(), seeds.end(), parsed.config.seed);
    const auto table = compare_methods(parsed.config, seeds, parsed.methods, max_threads);

    std::ostringstream rows;
    rows << "method,n_seeds,converged,convergence_mean,convergence_min,convergence_max,"
            "amplitude_mean,amplitude_min,amplitude_max\n";
    for (const auto& r : table.rows) {
      rows << r.method << ',' << r.n_seeds << ',' << r.converged << ','
           << format_double(r.convergence_mean) << ',' << format_double(r.convergence_min) << ','
           << format_double(r.convergence_max) << ',' << format_double(r.amplitude_mean) << ','
           << format_double(r.amplitude_min) << ',' << format_double(r.amplitude_max) << '\n';
    }
    write_text(opts.out / "comparison.csv", rows.str());

    std::ostringstream orderings;
    orderings << "first,second,statistic,fraction\n";
    for (const auto& o : table.orderings) {
      orderings << o.first << ',' << o.second << ',' << o.statistic << ','
                << format_double(o.fraction) << '\n';
    }
    write_text(opts.out / "orderings.csv", orderings.str());

    std::ostringstream per_seed;
    per_seed << "method,seed,convergence_time,rounds_to_converge,steady_state_amplitude,"
                "final_metric,truncated\n";
    for (std::size_t m = 0; m < table.rows.size(); ++m) {
      for (std::size_t s = 0; s < table.seeds.size(); ++s) {
        per_seed << table.rows[m].method << ',' << table.seeds[s] << ','
                 << summary_row(table.per_seed[m][s]) << '\n';
      }
    }
    write_text(opts.out / "per_seed.csv", per_seed.str());
    files = {"comparison.csv", "orderings.csv", "per_seed.csv"};

    if (!opts.quiet) {
      for (const auto& r : table.rows) {
        log << r.method << ": converged " << r.converged << '/' << r.n_seeds
            << ", mean convergence " << format_double(r.convergence_mean)
            << " s, mean amplitude " << format_double(r.amplitude_mean) << '\n';
      }
    }
  });
}

int cmd_sweep(const CommonOptions& opts, const std::vector<double>& gains, std::ostream& log,
              std::ostream& err, unsigned max_threads) {
  return guarded(opts, "sweep", err, [&](const ParsedConfig& parsed,
                                         std::vector<std::string>& files) {
    const auto summaries = sweep_gains(parsed.config, gains, max_threads);

    std::ostringstream rows;
    rows << "gain,convergence_time,rounds_to_converge,steady_state_amplitude,final_metric,"
            "truncated\n";
    for (std::size_t i = 0; i < gains.size(); ++i) {
      rows << format_double(gains[i]) << ',' << summary_row(summaries[i]) << '\n';
      if (!opts.quiet) log << "gain " << format_double(gains[i]) << ": " << summary_row(summaries[i]) << '\n';
    }
    write_text(opts.out / "sweep.csv", rows.str());
    files = {"sweep.csv"};
  });
}

}  // namespace phasesync::cli
