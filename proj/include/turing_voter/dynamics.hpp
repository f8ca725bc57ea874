#ifndef TURING_VOTER_DYNAMICS_HPP
#define TURING_VOTER_DYNAMICS_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "turing_voter/core.hpp"
#include "turing_voter/rng.hpp"

namespace tvoter {

/// Largest chain handled by the exact (2^N-state) solvers.
inline constexpr std::size_t kExactSiteCap = 14;
/// Largest closed class the dense stationary solver accepts (2^12 states).
inline constexpr std::size_t kStationaryStateCap = std::size_t{1} << 12;

/// Glauber flip rate of `site`. Cells with two neighbours use
/// 1/2 [1 - (gamma/2) x_i (x_left + x_right)]. Open-tape endpoints use
/// 1/2 [1 - x_i x_nbr tanh(J/kT)] when the temperature is known, otherwise
/// 1/2 [1 - (gamma/2) x_i x_nbr]; an isolated open cell flips at rate 1/2.
double glauber_rate(const SpinTape& tape, std::size_t site, const ModelParams& params);

/// Continuous-time rate operator over the 2^N configurations, column
/// convention: entry (to, from) is the rate from `from` to `to`.
class GeneratorMatrix {
 public:
  GeneratorMatrix(std::size_t n_sites, ModelParams params, Eigen::SparseMatrix<double> entries);

  std::size_t n_sites() const noexcept { return n_sites_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const ModelParams& params() const noexcept { return params_; }
  const Eigen::SparseMatrix<double>& entries() const noexcept { return entries_; }

  double operator()(std::size_t to, std::size_t from) const { return entries_.coeff(to, from); }
  /// Total exit rate of a configuration (minus its diagonal entry).
  double exit_rate(std::size_t from) const { return -entries_.coeff(from, from); }
  double max_exit_rate() const noexcept { return max_exit_rate_; }

  /// Largest |column sum|.
  double column_sum_residual() const;

  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries_); }

 private:
  std::size_t n_sites_;
  ModelParams params_;
  Eigen::SparseMatrix<double> entries_;
  double max_exit_rate_ = 0.0;
};

GeneratorMatrix build_generator(std::size_t n, const ModelParams& params);

/// Distribution over the 2^N configurations.
class ProbabilityVector {
 public:
  /// Validates: entries >= -1e-12, total within 1e-12 of one. Small negative
  /// entries are clamped to zero.
  explicit ProbabilityVector(Eigen::VectorXd values);

  static ProbabilityVector point_mass(std::size_t dimension, StateIndex state);
  static ProbabilityVector uniform(std::size_t dimension);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
  const Eigen::VectorXd& values() const noexcept { return values_; }

 private:
  Eigen::VectorXd values_;
};

inline constexpr double kEvolveTolerance = 1e-13;

/// P(t) = exp(G t) P(0) by uniformization. The result differs from the exact
/// solution by at most 2 * `tolerance` (tolerance <= 1e-12) in the 1-norm,
/// hence also in max norm.
ProbabilityVector evolve_exact(const ProbabilityVector& p0, const GeneratorMatrix& g, double t,
                               double tolerance = kEvolveTolerance);

/// Normalized stationary distributions, one per closed communicating class,
/// ordered by the smallest configuration index in the class. For |gamma| < 1
/// this is the single equilibrium; for gamma = 1 it is the pair of point
/// masses on the uniform tapes. Each class is solved with the
/// Grassmann-Taksar-Heyman elimination, which involves no subtraction.
std::vector<ProbabilityVector> stationary_distributions(const GeneratorMatrix& g);

struct TrajectoryEvent {
  double time;
  std::size_t site;
};

struct Trajectory {
  SpinTape initial;
  std::vector<TrajectoryEvent> events;
  double t_end;

  /// Tape after replaying every event.
  SpinTape final_tape() const;
};

/// Gillespie direct-method sample path on [0, t_end].
Trajectory kmc_sample(const SpinTape& tape0, const ModelParams& params, double t_end, Rng& rng);
Trajectory kmc_sample(const SpinTape& tape0, const ModelParams& params, double t_end,
                      std::uint64_t seed);

/// Largest pairwise flux mismatch |w_i(s) pi(s) - w_i(s') pi(s')| relative
/// to the larger flux, over every configuration s of n sites and every single
/// flip s -> s'. pi is the Gibbs weight at the parameters' temperature.
/// Throws if the parameters carry no temperature.
double detailed_balance_residual(std::size_t n, const ModelParams& params);

/// Same, but with the rates of `rates` tested against Gibbs weights of
/// `gibbs`. Lets a mismatched gamma be checked against a given temperature.
double detailed_balance_residual(std::size_t n, const ModelParams& rates,
                                 const PhysicalParams& gibbs);

/// <m>(t) = sum_s m(s) P_s(t) at each requested time (t >= 0, any order).
std::vector<double> mean_magnetization_curve(const ProbabilityVector& p0, const GeneratorMatrix& g,
                                             std::span<const double> times);

/// sum_s m(s) p_s.
double mean_magnetization(const ProbabilityVector& p, std::size_t n_sites);

}  // namespace tvoter

#endif  // TURING_VOTER_DYNAMICS_HPP
