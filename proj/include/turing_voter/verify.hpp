#ifndef TURING_VOTER_VERIFY_HPP
#define TURING_VOTER_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tvoter {

struct CheckResult {
  std::string name;
  bool passed;
  double residual;
  double tolerance;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::uint64_t kmc_trajectories = 100000;
  unsigned threads = 1;
  /// Adds a negative control: rates with gamma != tanh(2 beta J) tested
  /// against Gibbs weights. That check is expected to fail.
  bool inject_mismatch = false;
};

/// Runs the invariant suites: generator structure, detailed balance, Gibbs
/// stationarity, relaxation, voter limit, entropy bounds, closed forms against
/// enumeration, and KMC against exact evolution.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace tvoter

#endif  // TURING_VOTER_VERIFY_HPP
