#ifndef TURING_VOTER_STATS_HPP
#define TURING_VOTER_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

namespace tvoter::stats {

/// Standardized Pearson statistic for observed counts against a multinomial
/// with probabilities `probs` and `samples` draws. Uses the exact mean K-1
/// and variance 2(K-1) + (sum 1/p - K^2 - 2K + 2)/n of the statistic, so
/// |z| <= 3 is a 3-sigma acceptance band. Counts in zero-probability cells
/// give +infinity.
inline double pearson_z(std::span<const std::uint64_t> counts, std::span<const double> probs,
                        std::uint64_t samples) {
  const auto n = static_cast<double>(samples);
  double chi2 = 0.0;
  double inv_sum = 0.0;
  double cells = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double p = probs[i];
    if (p <= 0.0) {
      if (counts[i] != 0) return std::numeric_limits<double>::infinity();
      continue;
    }
    const double expected = n * p;
    const double diff = static_cast<double>(counts[i]) - expected;
    chi2 += diff * diff / expected;
    inv_sum += 1.0 / p;
    cells += 1.0;
  }
  const double dof = cells - 1.0;
  const double var = 2.0 * dof + (inv_sum - cells * cells - 2.0 * cells + 2.0) / n;
  if (!(var > 0.0)) return chi2 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return (chi2 - dof) / std::sqrt(var);
}

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::uint64_t count = 0;
};

template <typename Range>
SampleMoments moments(const Range& xs) {
  SampleMoments m;
  double mean = 0.0, m2 = 0.0;
  for (const auto x : xs) {
    ++m.count;
    const double d = static_cast<double>(x) - mean;
    mean += d / static_cast<double>(m.count);
    m2 += d * (static_cast<double>(x) - mean);
  }
  m.mean = mean;
  m.variance = m.count > 1 ? m2 / static_cast<double>(m.count - 1) : 0.0;
  return m;
}

/// z-scores of the sample mean and sample variance of Poisson(lambda) draws.
struct PoissonZ {
  double mean_z;
  double variance_z;
};

inline PoissonZ poisson_z(const SampleMoments& m, double lambda) {
  const auto n = static_cast<double>(m.count);
  const double mean_se = std::sqrt(lambda / n);
  // Var(s^2) ~ (mu4 - sigma^4)/n, with mu4 = lambda (1 + 3 lambda).
  const double var_se = std::sqrt((lambda + 2.0 * lambda * lambda) / n);
  return {(m.mean - lambda) / mean_se, (m.variance - lambda) / var_se};
}

/// z-score of `successes` out of `trials` Bernoulli(p) draws.
inline double binomial_z(std::uint64_t successes, std::uint64_t trials, double p) {
  const auto n = static_cast<double>(trials);
  return (static_cast<double>(successes) - n * p) / std::sqrt(n * p * (1.0 - p));
}

}  // namespace tvoter::stats

#endif  // TURING_VOTER_STATS_HPP
