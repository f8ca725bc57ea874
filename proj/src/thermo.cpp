#include "turing_voter/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tvoter {
namespace {

void require_physical(double coupling, double temperature, double boltzmann) {
  if (!std::isfinite(coupling)) throw std::invalid_argument("coupling must be finite");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be positive");
  }
  if (!(boltzmann > 0.0) || !std::isfinite(boltzmann)) {
    throw std::invalid_argument("Boltzmann constant must be positive");
  }
}

void require_sites(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("chain must have at least one site");
}

// ln cosh x without overflow for large |x|.
double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double reduced_coupling(double coupling, double temperature, double boltzmann) {
  return coupling / (boltzmann * temperature);
}

}  // namespace

double gamma_from_temperature(double coupling, double temperature, double boltzmann) {
  require_physical(coupling, temperature, boltzmann);
  return std::tanh(2.0 * reduced_coupling(coupling, temperature, boltzmann));
}

double free_energy(std::uint64_t n, double coupling, double temperature, double boltzmann) {
  require_sites(n);
  require_physical(coupling, temperature, boltzmann);
  const double x = reduced_coupling(coupling, temperature, boltzmann);
  const auto sites = static_cast<double>(n);
  const double kT = boltzmann * temperature;
  return -sites * kT * std::numbers::ln2 - (sites - 1.0) * kT * log_cosh(x);
}

double landauer_gap(std::uint64_t n, double coupling, double temperature, double boltzmann) {
  require_sites(n);
  require_physical(coupling, temperature, boltzmann);
  const double x = reduced_coupling(coupling, temperature, boltzmann);
  const double bonds = static_cast<double>(n) - 1.0;
  return bonds * boltzmann * log_cosh(x) + bonds * (coupling / temperature) * std::tanh(x);
}

double landauer_floor(std::uint64_t n, double boltzmann) {
  if (!(boltzmann > 0.0)) throw std::invalid_argument("Boltzmann constant must be positive");
  return static_cast<double>(n) * boltzmann * std::numbers::ln2;
}

double entropy(std::uint64_t n, double coupling, double temperature, double boltzmann) {
  return landauer_floor(n, boltzmann) + landauer_gap(n, coupling, temperature, boltzmann);
}

double thermodynamic_entropy(std::uint64_t n, double coupling, double temperature,
                             double boltzmann) {
  require_sites(n);
  require_physical(coupling, temperature, boltzmann);
  const double x = reduced_coupling(coupling, temperature, boltzmann);
  const double bonds = static_cast<double>(n) - 1.0;
  return landauer_floor(n, boltzmann) + bonds * boltzmann * log_cosh(x) -
         bonds * (coupling / temperature) * std::tanh(x);
}

double internal_energy(std::uint64_t n, double coupling, double temperature, double boltzmann) {
  require_sites(n);
  require_physical(coupling, temperature, boltzmann);
  const double x = reduced_coupling(coupling, temperature, boltzmann);
  return -(static_cast<double>(n) - 1.0) * coupling * std::tanh(x);
}

double erasure_energy(std::uint64_t n_bits, double temperature, double boltzmann) {
  require_physical(0.0, temperature, boltzmann);
  return static_cast<double>(n_bits) * boltzmann * temperature * std::numbers::ln2;
}

std::vector<double> gibbs_probabilities(std::size_t n, double coupling, double temperature,
                                        double boltzmann, double field, Boundary boundary) {
  require_sites(n);
  require_physical(coupling, temperature, boltzmann);
  if (n > kEnumerationSiteCap) {
    throw std::length_error("enumeration is capped at " + std::to_string(kEnumerationSiteCap) +
                            " sites");
  }
  const double beta = 1.0 / (boltzmann * temperature);
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> log_w(dim);
  for (std::uint64_t s = 0; s < dim; ++s) {
    log_w[s] = -beta * hamiltonian(decode_state(StateIndex{s}, n, boundary), coupling, field);
  }
  const double top = *std::max_element(log_w.begin(), log_w.end());
  double total = 0.0;
  for (double& lw : log_w) {
    lw = std::exp(lw - top);
    total += lw;
  }
  for (double& w : log_w) w /= total;
  return log_w;
}

GibbsSummary gibbs_brute_force(std::size_t n, double coupling, double temperature,
                               double boltzmann, double field, Boundary boundary) {
  require_sites(n);
  require_physical(coupling, temperature, boltzmann);
  if (n > kEnumerationSiteCap) {
    throw std::length_error("enumeration is capped at " + std::to_string(kEnumerationSiteCap) +
                            " sites");
  }
  const double kT = boltzmann * temperature;
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> energy(dim);
  for (std::uint64_t s = 0; s < dim; ++s) {
    energy[s] = hamiltonian(decode_state(StateIndex{s}, n, boundary), coupling, field);
  }
  const double e_min = *std::min_element(energy.begin(), energy.end());
  double shifted_z = 0.0;
  for (double e : energy) shifted_z += std::exp(-(e - e_min) / kT);
  const double log_z = -e_min / kT + std::log(shifted_z);

  double u = 0.0;
  double s_over_k = 0.0;
  for (double e : energy) {
    const double log_p = -e / kT - log_z;
    const double p = std::exp(log_p);
    u += p * e;
    s_over_k -= p * log_p;
  }
  return GibbsSummary{std::exp(log_z), -kT * log_z, u, boltzmann * s_over_k};
}

double periodic_partition_function(std::size_t n, double coupling, double temperature,
                                   double boltzmann) {
  require_sites(n);
  require_physical(coupling, temperature, boltzmann);
  const double x = reduced_coupling(coupling, temperature, boltzmann);
  const double sites = static_cast<double>(n);
  return std::pow(2.0 * std::cosh(x), sites) + std::pow(2.0 * std::sinh(x), sites);
}

ThermoReport thermo_report(std::uint64_t n, double coupling, double temperature, double boltzmann) {
  ThermoReport r{};
  r.n = n;
  r.J = coupling;
  r.T = temperature;
  r.k = boltzmann;
  r.gamma = gamma_from_temperature(coupling, temperature, boltzmann);
  r.F = free_energy(n, coupling, temperature, boltzmann);
  r.U = internal_energy(n, coupling, temperature, boltzmann);
  r.landauer_floor = landauer_floor(n, boltzmann);
  r.gap = landauer_gap(n, coupling, temperature, boltzmann);
  r.S = r.landauer_floor + r.gap;
  r.S_thermodynamic = thermodynamic_entropy(n, coupling, temperature, boltzmann);
  return r;
}

}  // namespace tvoter
