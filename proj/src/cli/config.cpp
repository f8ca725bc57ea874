#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "turing_voter/cli.hpp"
#include "turing_voter/dynamics.hpp"
#include "turing_voter/thermo.hpp"

namespace tvoter::cli {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument(fmt::format("malformed {} '{}'", what, text));
  }
  return value;
}

template <typename T>
std::string optional_text(const std::optional<T>& value) {
  return value ? fmt::format("{}", *value) : std::string("unset");
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Thermo: return "thermo";
    case Command::Simulate: return "simulate";
    case Command::Exact: return "exact";
    case Command::Verify: return "verify";
    case Command::Sweep: return "sweep";
  }
  return "unknown";
}

std::string_view to_string(Units units) { return units == Units::Natural ? "natural" : "si"; }

std::vector<double> LinearRange::points() const {
  std::vector<double> out;
  out.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out.push_back(steps == 1 ? first
                             : first + (last - first) * static_cast<double>(i) /
                                           static_cast<double>(steps - 1));
  }
  return out;
}

SiteRange parse_site_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw std::invalid_argument("site range must look like a:b");
  SiteRange r{parse_number<std::uint64_t>(parts[0], "range bound"),
              parse_number<std::uint64_t>(parts[1], "range bound")};
  if (r.first == 0 || r.last < r.first) {
    throw std::invalid_argument("site range is empty or starts at 0");
  }
  return r;
}

LinearRange parse_linear_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("range must look like a:b:steps");
  LinearRange r{parse_number<double>(parts[0], "range bound"),
                parse_number<double>(parts[1], "range bound"),
                parse_number<std::size_t>(parts[2], "step count")};
  if (r.steps == 0) throw std::invalid_argument("range has no points");
  if (!std::isfinite(r.first) || !std::isfinite(r.last) || r.last < r.first) {
    throw std::invalid_argument("range bounds must be finite and ordered");
  }
  if (r.steps == 1 && r.first != r.last) {
    throw std::invalid_argument("a single-point range needs equal bounds");
  }
  return r;
}

std::string format_number(double value, int precision) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  return fmt::format("{:.{}g}", value, precision);
}

std::uint64_t RunConfig::sites() const {
  if (n) return *n;
  if (!initial.empty() && initial != "uniform") return initial.size();
  return 4;
}

double RunConfig::boltzmann_constant() const {
  if (units == Units::SI) {
    if (!boltzmann) throw std::invalid_argument("--units si requires an explicit --boltzmann");
    return *boltzmann;
  }
  return boltzmann.value_or(1.0);
}

double RunConfig::temperature_value() const {
  if (units == Units::SI && !temperature) {
    throw std::invalid_argument("--units si requires an explicit --temperature");
  }
  return temperature.value_or(1.0);
}

ModelParams RunConfig::model_params() const {
  if (gamma && coupling) {
    throw std::invalid_argument("set either --gamma or --coupling/--temperature, not both");
  }
  if (gamma) return ModelParams::from_gamma(*gamma, boundary);
  if (coupling) {
    return ModelParams::from_physical({*coupling, temperature_value(), boltzmann_constant()},
                                      boundary);
  }
  throw std::invalid_argument("dynamics need --gamma or --coupling");
}

SpinTape RunConfig::initial_tape() const {
  if (initial.empty()) return SpinTape::alternating(sites(), boundary);
  if (initial == "uniform") throw std::invalid_argument("'uniform' is not a tape");
  return SpinTape::parse(initial, boundary);
}

void RunConfig::validate() const {
  if (threads == 0) throw std::invalid_argument("--threads must be at least 1");
  if (precision < 1 || precision > 17) throw std::invalid_argument("--precision must be 1..17");
  if (n && *n == 0) throw std::invalid_argument("--n must be at least 1");
  if (n && !initial.empty() && initial != "uniform" && initial.size() != *n) {
    throw std::invalid_argument("--initial length differs from --n");
  }
  // A preset fixes its own temperature and Boltzmann constant.
  if (units == Units::SI && preset.empty()) {
    boltzmann_constant();
    temperature_value();
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("--t-end must be >= 0");
  for (double t : times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("--times must be >= 0");
  }

  switch (command) {
    case Command::Thermo:
      if (gamma) throw std::invalid_argument("thermo takes --coupling/--temperature, not --gamma");
      if (!coupling) throw std::invalid_argument("thermo requires --coupling");
      thermo_report(sites(), *coupling, temperature_value(), boltzmann_constant());
      break;
    case Command::Simulate:
      if (initial == "uniform") {
        throw std::invalid_argument("simulate needs a concrete initial tape");
      }
      model_params();
      initial_tape();
      break;
    case Command::Exact:
      if (sites() > kExactSiteCap) {
        throw std::invalid_argument(
            fmt::format("exact solutions are capped at {} sites", kExactSiteCap));
      }
      model_params();
      if (initial != "uniform") initial_tape();
      break;
    case Command::Verify:
      break;
    case Command::Sweep:
      if (!preset.empty()) {
        if (preset != "petabit") throw std::invalid_argument("unknown preset '" + preset + "'");
        break;
      }
      if (gamma) throw std::invalid_argument("sweep takes --coupling or --sweep-betaj, not --gamma");
      if (!sweep_betaj && !coupling) {
        throw std::invalid_argument("sweep requires --sweep-betaj or --coupling");
      }
      break;
  }
}

std::string RunConfig::header() const {
  std::string h;
  auto line = [&h](std::string_view key, const std::string& value) {
    h += fmt::format("# {}={}\n", key, value);
  };
  h += fmt::format("# tvoter {}\n", TVOTER_VERSION);
  line("command", std::string(to_string(command)));
  line("n", fmt::format("{}", sites()));
  line("gamma", optional_text(gamma));
  line("coupling", optional_text(coupling));
  line("temperature", optional_text(temperature));
  line("boltzmann", optional_text(boltzmann));
  line("units", std::string(to_string(units)));
  line("boundary", std::string(tvoter::to_string(boundary)));
  line("seed", fmt::format("{}", seed));
  line("trajectories", optional_text(trajectories));
  line("t_end", fmt::format("{}", t_end));
  line("max_steps", fmt::format("{}", max_steps));
  line("initial", initial.empty() ? std::string("alternating") : initial);
  line("times", times.empty() ? std::string("default") : fmt::format("{}", fmt::join(times, ",")));
  line("sweep_n", sweep_n ? fmt::format("{}:{}", sweep_n->first, sweep_n->last) : "unset");
  line("sweep_betaj", sweep_betaj ? fmt::format("{}:{}:{}", sweep_betaj->first, sweep_betaj->last,
                                                sweep_betaj->steps)
                                  : "unset");
  line("preset", preset.empty() ? std::string("none") : preset);
  line("inject_mismatch", inject_mismatch ? "true" : "false");
  line("precision", fmt::format("{}", precision));
  return h;
}

}  // namespace tvoter::cli
