#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace cli = phasesync::cli;

int main(int argc, char** argv) {
  CLI::App app{"Phase synchronization / desynchronization simulator"};
  app.require_subcommand(1);

  cli::CommonOptions opts;
  std::uint64_t seed = 0;
  std::int64_t n_seeds = 0;
  std::vector<double> gains;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "Experiment config (JSON)")->required();
    sub->add_option("--out", opts.out, "Output directory")->required();
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_flag("--quiet", opts.quiet, "Suppress progress output");
  };

  auto* run = app.add_subcommand("run", "Run one experiment and write its trace");
  add_common(run);
  auto* compare = app.add_subcommand("compare", "Run all three actuation methods over seeds");
  add_common(compare);
  compare->add_option("--seeds", n_seeds, "Number of seeds")->required();
  auto* sweep = app.add_subcommand("sweep", "Run one experiment per coupling gain");
  add_common(sweep);
  sweep->add_option("--gains", gains, "Comma-separated gains in (0, 1]")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitConfig;
  }

  for (auto* sub : {run, compare, sweep}) {
    if (sub->parsed() && sub->count("--seed") > 0) opts.seed = seed;
  }

  if (run->parsed()) return cli::cmd_run(opts, std::cout, std::cerr);
  if (compare->parsed()) return cli::cmd_compare(opts, n_seeds, std::cout, std::cerr);
  return cli::cmd_sweep(opts, gains, std::cout, std::cerr);
}
