#ifndef TURING_VOTER_THERMO_HPP
#define TURING_VOTER_THERMO_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "turing_voter/core.hpp"

namespace tvoter {

/// SI Boltzmann constant, J/K.
inline constexpr double kBoltzmannSI = 1.380649e-23;

/// tanh(2J/kT): the flip-rate bias that makes the voter a Glauber chain at T.
double gamma_from_temperature(double coupling, double temperature, double boltzmann);

/// Equilibrium free energy of an open chain of n spins at h = 0:
/// F = -n k T [ln 2 + ((n-1)/n) ln cosh(J/kT)].
double free_energy(std::uint64_t n, double coupling, double temperature, double boltzmann);

/// The Landauer-bound entropy, written exactly as
/// S = n k ln 2 + (n-1) k ln cosh(J/kT) + (n-1) (J/T) tanh(J/kT).
/// Every term past n k ln 2 is nonnegative, so S >= n k ln 2 with equality
/// iff n = 1 or J = 0.
///
/// Note this is not -dF/dT of free_energy(): differentiating flips the sign
/// of the last term. See thermodynamic_entropy().
double entropy(std::uint64_t n, double coupling, double temperature, double boltzmann);

/// entropy() - n k ln 2, evaluated without cancellation.
double landauer_gap(std::uint64_t n, double coupling, double temperature, double boltzmann);

/// -dF/dT of free_energy(), which equals the Gibbs entropy of the open chain:
/// n k ln 2 + (n-1) k ln cosh(J/kT) - (n-1) (J/T) tanh(J/kT).
double thermodynamic_entropy(std::uint64_t n, double coupling, double temperature,
                             double boltzmann);

/// Mean energy of the open chain, -(n-1) J tanh(J/kT).
double internal_energy(std::uint64_t n, double coupling, double temperature, double boltzmann);

/// n k ln 2: entropy floor of n bits.
double landauer_floor(std::uint64_t n, double boltzmann);

/// Minimal energy to erase n bits at temperature T: n k T ln 2.
double erasure_energy(std::uint64_t n_bits, double temperature, double boltzmann);

struct GibbsSummary {
  double Z;  // partition function
  double F;
  double U;
  double S;
};

inline constexpr std::size_t kEnumerationSiteCap = 16;

/// Exhaustive sum over all 2^n configurations of H = -J sum s_i s_{i+1} - h sum s_i.
GibbsSummary gibbs_brute_force(std::size_t n, double coupling, double temperature,
                               double boltzmann, double field, Boundary boundary);

/// Boltzmann probabilities exp(-H/kT)/Z of every configuration, indexed by
/// StateIndex. Computed by enumeration.
std::vector<double> gibbs_probabilities(std::size_t n, double coupling, double temperature,
                                        double boltzmann, double field, Boundary boundary);

/// Periodic-chain partition function from the 2x2 transfer matrix at h = 0:
/// (2 cosh K)^n + (2 sinh K)^n with K = J/kT. Oracle cross-check only.
double periodic_partition_function(std::size_t n, double coupling, double temperature,
                                   double boltzmann);

struct ThermoReport {
  std::uint64_t n;
  double J;
  double T;
  double k;
  double gamma;
  double F;
  double U;                // internal_energy()
  double S;                // entropy()
  double S_thermodynamic;  // thermodynamic_entropy(); F = U - T S_thermodynamic
  double landauer_floor;
  double gap;              // S - landauer_floor
};

ThermoReport thermo_report(std::uint64_t n, double coupling, double temperature, double boltzmann);

}  // namespace tvoter

#endif  // TURING_VOTER_THERMO_HPP
