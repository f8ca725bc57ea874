#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "turing_voter/cli.hpp"

namespace tvoter::cli {
namespace {

template <typename T>
void optional_option(CLI::App& app, const std::string& name, std::optional<T>& target,
                     const std::string& help) {
  app.add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Turing voter: Glauber-chain simulation, exact solutions and thermodynamics"};
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.require_subcommand(1, 1);

  RunConfig config;
  std::string boundary = "periodic";
  std::string units = "natural";
  std::string sweep_n, sweep_betaj;

  optional_option(app, "--n", config.n, "number of tape cells");
  optional_option(app, "--gamma", config.gamma, "flip-rate bias in [-1, 1]");
  optional_option(app, "--coupling", config.coupling, "Ising coupling J");
  optional_option(app, "--temperature", config.temperature, "temperature T");
  optional_option(app, "--boltzmann", config.boltzmann, "Boltzmann constant k");
  app.add_option("--boundary", boundary, "periodic or open")
      ->check(CLI::IsMember({"periodic", "open"}));
  app.add_option("--seed", config.seed, "master random seed");
  optional_option(app, "--trajectories", config.trajectories, "number of trajectories");
  app.add_option("--t-end", config.t_end, "final machine time");
  app.add_option("--max-steps", config.max_steps, "step budget per trajectory");
  app.add_option("--out", config.output_path, "output file (default: stdout)");
  app.add_option("--units", units, "natural (k = 1) or si")
      ->check(CLI::IsMember({"natural", "si"}));
  app.add_option("--initial", config.initial, "initial tape as +/- pattern, or 'uniform'");
  app.add_option("--times", config.times, "comma-separated output times (exact)")
      ->delimiter(',');
  app.add_option("--events", config.events_path, "event log file (simulate)");
  app.add_option("--summary-out", config.summary_path, "magnetization summary file (exact)");
  app.add_option("--sweep-n", sweep_n, "inclusive site range a:b");
  app.add_option("--sweep-betaj", sweep_betaj, "J/kT range a:b:steps");
  app.add_option("--preset", config.preset, "named sweep preset (petabit)");
  app.add_flag("--inject-mismatch", config.inject_mismatch,
               "verify: add a mismatched-gamma negative control");
  app.add_option("--threads", config.threads, "worker threads");
  app.add_option("--precision", config.precision, "significant digits in output");

  const std::pair<const char*, Command> commands[] = {
      {"thermo", Command::Thermo},   {"simulate", Command::Simulate}, {"exact", Command::Exact},
      {"verify", Command::Verify},   {"sweep", Command::Sweep},
  };
  const char* descriptions[] = {
      "closed-form thermodynamics of an open chain",
      "run the discrete voter machine",
      "exact master-equation evolution",
      "run the invariant suites",
      "thermodynamics over a parameter grid",
  };
  std::map<CLI::App*, Command> by_app;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    sub->fallthrough();
    by_app[sub] = commands[i].second;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    config.command = by_app.at(app.get_subcommands().front());
    config.boundary = parse_boundary(boundary);
    config.units = units == "si" ? Units::SI : Units::Natural;
    if (!sweep_n.empty()) config.sweep_n = parse_site_range(sweep_n);
    if (!sweep_betaj.empty()) config.sweep_betaj = parse_linear_range(sweep_betaj);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.output_path.empty()) {
      file.open(config.output_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open '" + config.output_path + "'");
      sink = &file;
    }
    int status = 0;
    switch (config.command) {
      case Command::Thermo: status = cmd_thermo(config, *sink); break;
      case Command::Simulate: status = cmd_simulate(config, *sink); break;
      case Command::Exact: status = cmd_exact(config, *sink); break;
      case Command::Verify: status = cmd_verify(config, *sink); break;
      case Command::Sweep: status = cmd_sweep(config, *sink); break;
    }
    sink->flush();
    if (!*sink) throw std::runtime_error("failed writing output");
    return status;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace tvoter::cli
