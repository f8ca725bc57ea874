#ifndef TURING_VOTER_CLI_HPP
#define TURING_VOTER_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turing_voter/core.hpp"

namespace tvoter::cli {

enum class Command { Thermo, Simulate, Exact, Verify, Sweep };
enum class Units { Natural, SI };

std::string_view to_string(Command command);
std::string_view to_string(Units units);

/// Inclusive integer range a:b.
struct SiteRange {
  std::uint64_t first;
  std::uint64_t last;
};

/// `steps` evenly spaced points from first to last inclusive.
struct LinearRange {
  double first;
  double last;
  std::size_t steps;

  std::vector<double> points() const;
};

SiteRange parse_site_range(std::string_view text);
LinearRange parse_linear_range(std::string_view text);

struct RunConfig {
  Command command = Command::Thermo;
  std::optional<std::uint64_t> n;
  std::optional<double> gamma;
  std::optional<double> coupling;
  std::optional<double> temperature;
  std::optional<double> boltzmann;
  Boundary boundary = Boundary::Periodic;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> trajectories;
  double t_end = 1.0;
  std::uint64_t max_steps = 100000;
  std::string output_path;  // empty: standard output
  Units units = Units::Natural;

  // simulate / exact
  std::string initial;       // '+'/'-' pattern, "uniform" (exact only), or empty
  std::vector<double> times;
  std::string events_path;
  std::string summary_path;

  // sweep
  std::optional<SiteRange> sweep_n;
  std::optional<LinearRange> sweep_betaj;
  std::string preset;

  // verify
  bool inject_mismatch = false;

  unsigned threads = 1;
  int precision = 9;

  std::uint64_t sites() const;
  double boltzmann_constant() const;
  double temperature_value() const;
  /// Dynamics parameters: gamma, or the physical triple. Exactly one must be set.
  ModelParams model_params() const;
  /// Initial tape for simulate/exact.
  SpinTape initial_tape() const;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;

  /// `#`-prefixed metadata block: version, command and every setting.
  std::string header() const;
};

std::string format_number(double value, int precision);

int cmd_thermo(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_exact(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);

/// Parses arguments (argv[0] is the program name) and runs the command.
/// Result rows go to --out or `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tvoter::cli

#endif  // TURING_VOTER_CLI_HPP
