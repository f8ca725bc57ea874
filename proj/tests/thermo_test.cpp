#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "turing_voter/thermo.hpp"

namespace tvoter {
namespace {

constexpr double kLn2 = std::numbers::ln2;

double rel(double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / std::abs(b); }

TEST(GammaFromTemperature, Examples) {
  EXPECT_EQ(gamma_from_temperature(0.0, 2.0, 1.0), 0.0);
  // 30-digit reference value of tanh(1).
  EXPECT_NEAR(gamma_from_temperature(0.5, 1.0, 1.0), 0.761594155955764888, 1e-16);
  EXPECT_NEAR(gamma_from_temperature(1.0, 4.0, 0.5), 0.761594155955764888, 1e-16);
  EXPECT_EQ(gamma_from_temperature(1.0, 1e-3, 1.0), 1.0);
  EXPECT_THROW(gamma_from_temperature(1.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(gamma_from_temperature(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST(GammaFromTemperature, OddAndIncreasingInCoupling) {
  double previous = -2.0;
  for (double j = -3.0; j <= 3.0; j += 0.05) {
    const double g = gamma_from_temperature(j, 1.7, 1.0);
    EXPECT_EQ(g, -gamma_from_temperature(-j, 1.7, 1.0));
    EXPECT_GT(g, previous);
    previous = g;
  }
}

TEST(FreeEnergy, Examples) {
  EXPECT_DOUBLE_EQ(free_energy(1, 3.0, 2.0, 1.0), -2.0 * kLn2);
  EXPECT_NEAR(free_energy(2, 1.0, 1.0, 1.0), -1.820075191602917806, 1e-15);
  EXPECT_DOUBLE_EQ(free_energy(7, 0.0, 0.5, 2.0), -7.0 * kLn2);
  EXPECT_THROW(free_energy(0, 1.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(free_energy(3, 1.0, -1.0, 1.0), std::invalid_argument);
}

TEST(Entropy, Examples) {
  EXPECT_DOUBLE_EQ(entropy(1, 2.5, 0.3, 1.0), kLn2);
  EXPECT_DOUBLE_EQ(entropy(9, 0.0, 1.0, 1.0), 9.0 * kLn2);
  EXPECT_NEAR(entropy(8, 1.0, 1.0, 1.0), 13.9128023495511070, 1e-13);
}

TEST(LandauerGap, Examples) {
  EXPECT_EQ(landauer_gap(1, 4.0, 0.7, 1.0), 0.0);
  EXPECT_EQ(landauer_gap(5, 0.0, 0.7, 1.0), 0.0);
  EXPECT_NEAR(landauer_gap(2, 1.0, 1.0, 1.0), 1.19537498643879208, 1e-15);
}

TEST(LandauerGap, NonNegativeAndZeroOnlyInEqualityCases) {
  std::mt19937_64 gen(1234);
  std::uniform_int_distribution<std::uint64_t> sites(1, 64);
  std::uniform_real_distribution<double> reduced(-5.0, 5.0), temp(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = sites(gen);
    const double t = temp(gen);
    const double j = reduced(gen) * t;
    const double gap = landauer_gap(n, j, t, 1.0) / landauer_floor(n, 1.0);
    ASSERT_GE(gap, -1e-12);
    if (n > 1) ASSERT_GT(gap, 1e-12);
    ASSERT_NEAR(entropy(n, j, t, 1.0), landauer_floor(n, 1.0) + landauer_gap(n, j, t, 1.0),
                1e-12 * n);
  }
}

TEST(Entropy, SiUnitsScaleWithBoltzmann) {
  const double k = kBoltzmannSI;
  const double t = 300.0;
  const double j = 0.7 * k * t;
  EXPECT_NEAR(entropy(10, j, t, k) / k, entropy(10, 0.7, 1.0, 1.0), 1e-12);
}

TEST(ErasureEnergy, Examples) {
  EXPECT_DOUBLE_EQ(erasure_energy(1, 1.0, 1.0), kLn2);
  EXPECT_EQ(erasure_energy(0, 300.0, kBoltzmannSI), 0.0);
  const double petabit = erasure_energy(1'000'000'000'000'000ULL, 300.0, kBoltzmannSI);
  EXPECT_NEAR(petabit, 2.87097888507872379e-6, 1e-20);
  EXPECT_GE(petabit, 2.8e-6);
  EXPECT_LE(petabit, 2.95e-6);
}

TEST(ErasureEnergy, IsTemperatureTimesFloor) {
  for (std::uint64_t n : {1ULL, 17ULL, 1ULL << 40}) {
    for (double t : {0.5, 300.0}) {
      EXPECT_LE(rel(erasure_energy(n, t, kBoltzmannSI), t * landauer_floor(n, kBoltzmannSI)),
                1e-15);
    }
  }
}

TEST(GibbsBruteForce, Examples) {
  const auto one = gibbs_brute_force(1, 1.0, 1.0, 1.0, 0.0, Boundary::Open);
  EXPECT_DOUBLE_EQ(one.Z, 2.0);
  EXPECT_DOUBLE_EQ(one.S, kLn2);
  const auto two = gibbs_brute_force(2, 1.0, 1.0, 1.0, 0.0, Boundary::Open);
  EXPECT_LE(rel(two.Z, 4.0 * std::cosh(1.0)), 1e-14);
  const auto ring = gibbs_brute_force(4, 1.0, 1.0, 1.0, 0.0, Boundary::Periodic);
  EXPECT_LE(rel(ring.Z, std::pow(2 * std::cosh(1.0), 4) + std::pow(2 * std::sinh(1.0), 4)), 1e-14);
  EXPECT_THROW(gibbs_brute_force(17, 1.0, 1.0, 1.0, 0.0, Boundary::Open), std::length_error);
}

TEST(GibbsBruteForce, InternallyConsistentWithField) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (double h : {0.0, 0.4, -1.1}) {
      for (Boundary b : {Boundary::Open, Boundary::Periodic}) {
        const auto g = gibbs_brute_force(n, 0.8, 1.3, 1.0, h, b);
        ASSERT_LE(rel(g.F, g.U - 1.3 * g.S), 1e-10);
        ASSERT_LE(rel(g.F, -1.3 * std::log(g.Z)), 1e-12);
      }
    }
  }
}

TEST(PeriodicPartitionFunction, MatchesEnumeration) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (double bj : {-1.5, 0.2, 1.0}) {
      const auto g = gibbs_brute_force(n, bj, 1.0, 1.0, 0.0, Boundary::Periodic);
      ASSERT_LE(rel(periodic_partition_function(n, bj, 1.0, 1.0), g.Z), 1e-12);
    }
  }
}

TEST(ClosedForms, FreeEnergyMatchesOpenChainEnumeration) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (double bj : {-1.3, 0.5, 2.0}) {
      const double t = 0.8;
      const auto g = gibbs_brute_force(n, bj * t, t, 1.0, 0.0, Boundary::Open);
      ASSERT_LE(rel(free_energy(n, bj * t, t, 1.0), g.F), 1e-10);
      ASSERT_LE(rel(internal_energy(n, bj * t, t, 1.0), g.U), 1e-10);
      ASSERT_LE(rel(thermodynamic_entropy(n, bj * t, t, 1.0), g.S), 1e-10);
    }
  }
}

TEST(ClosedForms, ThermodynamicEntropyIsMinusTemperatureDerivative) {
  for (std::uint64_t n : {1ULL, 2ULL, 7ULL, 40ULL}) {
    for (double bj : {-4.0, -0.3, 0.9, 3.0}) {
      const double t = 1.9;
      const double j = bj * t;
      const double h = 1e-5 * t;
      const double dfdt = (free_energy(n, j, t + h, 1.0) - free_energy(n, j, t - h, 1.0)) / (2 * h);
      ASSERT_LE(rel(thermodynamic_entropy(n, j, t, 1.0), -dfdt), 1e-6);
    }
  }
}

// The Landauer-bound entropy and -dF/dT differ exactly by the sign of the
// (n-1)(J/T)tanh(J/kT) term.
TEST(ClosedForms, EntropyFormsDifferByTwiceTheCouplingTerm) {
  for (std::uint64_t n : {2ULL, 8ULL, 33ULL}) {
    for (double bj : {-2.0, 0.4, 1.0}) {
      const double t = 1.25;
      const double j = bj * t;
      const double term = double(n - 1) * (j / t) * std::tanh(bj);
      EXPECT_NEAR(entropy(n, j, t, 1.0) - thermodynamic_entropy(n, j, t, 1.0), 2 * term, 1e-12 * n);
    }
  }
  EXPECT_NEAR(thermodynamic_entropy(8, 1.0, 1.0, 1.0), 3.25048416617039857, 1e-13);
}

TEST(ThermoReport, FieldsAndInvariants) {
  const auto r = thermo_report(6, 0.9, 1.4, 1.0);
  EXPECT_EQ(r.n, 6u);
  EXPECT_DOUBLE_EQ(r.gamma, std::tanh(2 * 0.9 / 1.4));
  EXPECT_DOUBLE_EQ(r.landauer_floor, 6 * kLn2);
  EXPECT_GE(r.gap, -1e-12);
  EXPECT_DOUBLE_EQ(r.S, r.landauer_floor + r.gap);
  EXPECT_LE(rel(r.F, r.U - r.T * r.S_thermodynamic), 1e-9);
}

TEST(Thermo, LargeChainsStayFinite) {
  const auto r = thermo_report(1'000'000'000'000'000ULL, 0.0, 300.0, kBoltzmannSI);
  EXPECT_TRUE(std::isfinite(r.S));
  EXPECT_EQ(r.gap, 0.0);
  EXPECT_TRUE(std::isfinite(free_energy(10, 1e4, 1.0, 1.0)));
}

}  // namespace
}  // namespace tvoter
