#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "turing_voter/cli.hpp"
#include "turing_voter/dynamics.hpp"
#include "turing_voter/parallel.hpp"
#include "turing_voter/rng.hpp"
#include "turing_voter/thermo.hpp"
#include "turing_voter/verify.hpp"
#include "turing_voter/voter.hpp"

namespace tvoter::cli {
namespace {

constexpr std::string_view kThermoColumns = "N,J,T,k,gamma,F,U,S,landauer_floor,gap";
constexpr std::uint64_t kPetabit = 1'000'000'000'000'000ULL;
constexpr double kRoomTemperature = 300.0;

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  return file;
}

void write_thermo_row(std::ostream& out, const ThermoReport& r, int precision) {
  auto num = [precision](double v) { return format_number(v, precision); };
  out << r.n << ',' << num(r.J) << ',' << num(r.T) << ',' << num(r.k) << ',' << num(r.gamma) << ','
      << num(r.F) << ',' << num(r.U) << ',' << num(r.S) << ',' << num(r.landauer_floor) << ','
      << num(r.gap) << '\n';
}

struct TrajectorySummary {
  bool halted = false;
  Spin consensus = 0;
  std::uint64_t steps = 0;
  double final_magnetization = 0.0;
  std::string event_log;
};

}  // namespace

int cmd_thermo(const RunConfig& config, std::ostream& out) {
  config.validate();
  const ThermoReport report = thermo_report(config.sites(), *config.coupling,
                                            config.temperature_value(), config.boltzmann_constant());
  out << config.header() << kThermoColumns << '\n';
  write_thermo_row(out, report, config.precision);
  return 0;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  config.validate();
  const ModelParams params = config.model_params();
  const SpinTape tape0 = config.initial_tape();
  const std::uint64_t count = config.trajectories.value_or(1);
  const bool log_events = !config.events_path.empty();
  const double n_sites = static_cast<double>(tape0.size());

  std::vector<TrajectorySummary> results(count);
  parallel_for(count, config.threads, [&](std::size_t id) {
    TuringVoter machine(tape0, params, substream_seed(config.seed, id));
    TrajectorySummary& summary = results[id];
    std::string log;
    int up_sum = machine.tape().sum();
    const Outcome outcome = machine.run_until_halt(config.max_steps, [&](const StepEvent& e) {
      if (!log_events || !e.flipped) return;
      const Spin symbol = machine.tape()[e.site];
      up_sum += 2 * symbol;
      log += fmt::format("{},{},{},{}\n", format_number(machine.machine_time(), config.precision),
                         e.site, static_cast<int>(symbol),
                         format_number(up_sum / n_sites, config.precision));
    });
    summary.halted = outcome.status == MachineStatus::Halted;
    summary.consensus = outcome.consensus.value_or(0);
    summary.steps = outcome.steps;
    summary.final_magnetization = magnetization(outcome.final_tape);
    summary.event_log = std::move(log);
  });

  out << config.header() << "trajectory_id,halted,consensus_symbol,steps,final_magnetization\n";
  for (std::size_t id = 0; id < count; ++id) {
    const auto& r = results[id];
    out << id << ',' << (r.halted ? "true" : "false") << ',' << static_cast<int>(r.consensus) << ','
        << r.steps << ',' << format_number(r.final_magnetization, config.precision) << '\n';
  }

  if (log_events) {
    std::ofstream events = open_output(config.events_path);
    events << config.header() << "time,site,new_symbol,magnetization\n";
    for (std::size_t id = 0; id < count; ++id) {
      events << "# trajectory=" << id << '\n' << results[id].event_log;
    }
    if (!events) throw std::runtime_error("failed writing '" + config.events_path + "'");
  }
  return 0;
}

int cmd_exact(const RunConfig& config, std::ostream& out) {
  config.validate();
  const ModelParams params = config.model_params();
  const std::size_t n = config.sites();
  const GeneratorMatrix g = build_generator(n, params);
  const ProbabilityVector p0 =
      config.initial == "uniform"
          ? ProbabilityVector::uniform(g.dimension())
          : ProbabilityVector::point_mass(g.dimension(), encode_state(config.initial_tape()));

  std::vector<double> times = config.times;
  if (times.empty()) times = {0.0, config.t_end};
  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });

  std::vector<ProbabilityVector> at(times.size(), p0);
  ProbabilityVector p = p0;
  double now = 0.0;
  for (std::size_t idx : order) {
    p = evolve_exact(p, g, times[idx] - now);
    now = times[idx];
    at[idx] = p;
  }

  const int prec = config.precision;
  out << config.header() << "time,state_index,probability\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const std::string t = format_number(times[i], prec);
    for (std::size_t s = 0; s < at[i].size(); ++s) {
      out << t << ',' << s << ',' << format_number(at[i][s], prec) << '\n';
    }
  }

  std::ostringstream summary;
  summary << "time,mean_magnetization\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    summary << format_number(times[i], prec) << ','
            << format_number(mean_magnetization(at[i], n), prec) << '\n';
  }
  if (config.summary_path.empty()) {
    out << "# mean magnetization\n" << summary.str();
  } else {
    std::ofstream file = open_output(config.summary_path);
    file << config.header() << summary.str();
  }
  return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  config.validate();
  VerifyOptions options;
  options.seed = config.seed;
  options.kmc_trajectories = config.trajectories.value_or(options.kmc_trajectories);
  options.threads = config.threads;
  options.inject_mismatch = config.inject_mismatch;
  const auto results = run_verification(options);

  out << config.header() << "check,status,residual,tolerance\n";
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    out << r.name << ',' << (r.passed ? "PASS" : "FAIL") << ','
        << format_number(r.residual, 6) << ',' << format_number(r.tolerance, 6) << '\n';
  }
  return all_passed ? 0 : 1;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  config.validate();
  if (config.preset == "petabit") {
    // Temperature and k are fixed by the preset: 1e15 bits erased at 300 K.
    out << config.header() << "n_bits,T,k,erasure_energy\n";
    out << kPetabit << ',' << format_number(kRoomTemperature, config.precision) << ','
        << format_number(kBoltzmannSI, config.precision) << ','
        << format_number(erasure_energy(kPetabit, kRoomTemperature, kBoltzmannSI),
                         config.precision)
        << '\n';
    return 0;
  }

  const double k = config.boltzmann_constant();
  const double temperature = config.temperature_value();
  std::vector<std::uint64_t> sites;
  if (config.sweep_n) {
    for (std::uint64_t n = config.sweep_n->first; n <= config.sweep_n->last; ++n) {
      sites.push_back(n);
    }
  } else {
    sites.push_back(config.sites());
  }
  std::vector<double> couplings;
  if (config.sweep_betaj) {
    for (double bj : config.sweep_betaj->points()) couplings.push_back(bj * k * temperature);
  } else {
    couplings.push_back(*config.coupling);
  }

  std::vector<ThermoReport> rows;
  rows.reserve(sites.size() * couplings.size());
  for (std::uint64_t n : sites) {
    for (double j : couplings) rows.push_back(thermo_report(n, j, temperature, k));
  }
  out << config.header() << kThermoColumns << '\n';
  for (const auto& r : rows) write_thermo_row(out, r, config.precision);
  return 0;
}

}  // namespace tvoter::cli
