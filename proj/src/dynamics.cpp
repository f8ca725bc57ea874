#include "turing_voter/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "turing_voter/voter.hpp"

namespace tvoter {
namespace {

void require_zero_field(const ModelParams& params) {
  if (params.field() != 0.0) {
    throw std::invalid_argument("dynamics are defined for zero field only");
  }
}

void require_exact_size(std::size_t n) {
  if (n == 0) throw std::invalid_argument("chain must have at least one site");
  if (n > kExactSiteCap) {
    throw std::length_error("exact solvers are capped at " + std::to_string(kExactSiteCap) +
                            " sites (requested " + std::to_string(n) + ")");
  }
}

double state_magnetization(std::uint64_t state, std::size_t n) {
  const auto up = static_cast<double>(std::popcount(state));
  return (2.0 * up - static_cast<double>(n)) / static_cast<double>(n);
}

// Iterative Tarjan; returns the component id of every node, ids in
// reverse topological order of the condensation.
std::vector<std::size_t> strongly_connected_components(
    const Eigen::SparseMatrix<double>& entries, std::size_t& n_components) {
  const auto dim = static_cast<std::size_t>(entries.cols());
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(dim, kUnvisited), low(dim, 0), component(dim, kUnvisited);
  std::vector<bool> on_stack(dim, false);
  std::vector<std::size_t> stack;
  struct Frame {
    std::size_t node;
    Eigen::SparseMatrix<double>::InnerIterator it;
  };
  std::vector<Frame> call;
  std::size_t counter = 0;
  n_components = 0;

  for (std::size_t root = 0; root < dim; ++root) {
    if (index[root] != kUnvisited) continue;
    auto open = [&](std::size_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      call.push_back({v, Eigen::SparseMatrix<double>::InnerIterator(
                             entries, static_cast<Eigen::Index>(v))});
    };
    open(root);
    while (!call.empty()) {
      Frame& frame = call.back();
      const std::size_t v = frame.node;
      bool descended = false;
      for (; frame.it; ++frame.it) {
        const auto w = static_cast<std::size_t>(frame.it.row());
        if (w == v || frame.it.value() <= 0.0) continue;
        if (index[w] == kUnvisited) {
          ++frame.it;
          open(w);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = n_components;
        } while (w != v);
        ++n_components;
      }
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return component;
}

// Stationary vector of an irreducible rate matrix given in row convention
// (rates(a, b) = rate a -> b; diagonal ignored).
Eigen::VectorXd gth_stationary(Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                             Eigen::RowMajor> rates) {
  const Eigen::Index m = rates.rows();
  for (Eigen::Index k = m - 1; k > 0; --k) {
    double out = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) out += rates(k, j);
    if (!(out > 0.0)) throw std::runtime_error("class is not irreducible");
    for (Eigen::Index i = 0; i < k; ++i) {
      const double into = rates(i, k) / out;
      rates(i, k) = into;
      if (into == 0.0) continue;
      double* row = rates.row(i).data();
      const double* from_k = rates.row(k).data();
      for (Eigen::Index j = 0; j < k; ++j) {
        if (j != i) row[j] += into * from_k[j];
      }
    }
  }
  Eigen::VectorXd pi(m);
  pi[0] = 1.0;
  for (Eigen::Index k = 1; k < m; ++k) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) acc += pi[i] * rates(i, k);
    pi[k] = acc;
  }
  return pi / pi.sum();
}

}  // namespace

double glauber_rate(const SpinTape& tape, std::size_t site, const ModelParams& params) {
  require_zero_field(params);
  if (site >= tape.size()) throw std::out_of_range("site out of range");
  if (tape.boundary() != params.boundary()) {
    throw std::invalid_argument("tape and parameter boundary conditions differ");
  }
  const auto l = tape.left(site);
  const auto r = tape.right(site);
  if (l && r) return flip_probability(tape, site, params.gamma());
  if (!l && !r) return 0.5;
  const Spin neighbour = tape[l ? *l : *r];
  const int local = tape[site] * neighbour;
  if (const auto& phys = params.physical()) {
    return 0.5 * (1.0 - local * std::tanh(phys->coupling * phys->beta()));
  }
  return 0.5 * (1.0 - 0.5 * params.gamma() * local);
}

GeneratorMatrix::GeneratorMatrix(std::size_t n_sites, ModelParams params,
                                 Eigen::SparseMatrix<double> entries)
    : n_sites_(n_sites), params_(params), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() ||
      static_cast<std::size_t>(entries_.rows()) != (std::size_t{1} << n_sites_)) {
    throw std::invalid_argument("generator must be 2^N x 2^N");
  }
  entries_.makeCompressed();
  for (Eigen::Index c = 0; c < entries_.cols(); ++c) {
    max_exit_rate_ = std::max(max_exit_rate_, -entries_.coeff(c, c));
  }
}

double GeneratorMatrix::column_sum_residual() const {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < entries_.outerSize(); ++c) {
    double sum = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(entries_, c); it; ++it) sum += it.value();
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

GeneratorMatrix build_generator(std::size_t n, const ModelParams& params) {
  require_exact_size(n);
  require_zero_field(params);
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(dim * (n + 1));
  for (std::uint64_t state = 0; state < dim; ++state) {
    const SpinTape tape = decode_state(StateIndex{state}, n, params.boundary());
    double exit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double rate = glauber_rate(tape, i, params);
      if (rate == 0.0) continue;
      const std::uint64_t target = state ^ (std::uint64_t{1} << i);
      triplets.emplace_back(static_cast<int>(target), static_cast<int>(state), rate);
      exit += rate;
    }
    triplets.emplace_back(static_cast<int>(state), static_cast<int>(state), -exit);
  }
  Eigen::SparseMatrix<double> entries(static_cast<Eigen::Index>(dim),
                                      static_cast<Eigen::Index>(dim));
  entries.setFromTriplets(triplets.begin(), triplets.end());
  return GeneratorMatrix(n, params, std::move(entries));
}

ProbabilityVector::ProbabilityVector(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() == 0) throw std::invalid_argument("empty probability vector");
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v < -1e-12) {
      throw std::invalid_argument("probability entries must be finite and nonnegative");
    }
    if (v < 0.0) values_[i] = 0.0;
  }
  if (std::abs(values_.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("probabilities must sum to one");
  }
}

ProbabilityVector ProbabilityVector::point_mass(std::size_t dimension, StateIndex state) {
  if (state.value >= dimension) throw std::out_of_range("state index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension));
  v[static_cast<Eigen::Index>(state.value)] = 1.0;
  return ProbabilityVector(std::move(v));
}

ProbabilityVector ProbabilityVector::uniform(std::size_t dimension) {
  const auto dim = static_cast<Eigen::Index>(dimension);
  return ProbabilityVector(Eigen::VectorXd::Constant(dim, 1.0 / static_cast<double>(dimension)));
}

ProbabilityVector evolve_exact(const ProbabilityVector& p0, const GeneratorMatrix& g, double t,
                               double tolerance) {
  if (p0.size() != g.dimension()) throw std::invalid_argument("dimension mismatch");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be >= 0");
  if (!(tolerance > 0.0 && tolerance <= 1e-12)) {
    throw std::invalid_argument("tolerance must lie in (0, 1e-12]");
  }
  const double lambda = g.max_exit_rate();
  if (t == 0.0 || lambda == 0.0) return p0;

  // exp(G dt) = sum_k Poisson(k; lambda dt) (I + G/lambda)^k. Split t so each
  // chunk has a Poisson mean of at most 32.
  constexpr double kMaxChunkMean = 32.0;
  const double chunks = std::ceil(lambda * t / kMaxChunkMean);
  const auto n_chunks = static_cast<std::size_t>(chunks);
  const double mean = lambda * t / chunks;
  const double chunk_tolerance = tolerance / chunks;
  const Eigen::SparseMatrix<double> jump = g.entries() / lambda;

  Eigen::VectorXd p = p0.values();
  Eigen::VectorXd term(p.size());
  Eigen::VectorXd acc(p.size());
  for (std::size_t c = 0; c < n_chunks; ++c) {
    term = p;
    double weight = std::exp(-mean);
    double total_weight = weight;
    acc = weight * term;
    for (int k = 1;; ++k) {
      term += jump * term;
      weight *= mean / k;
      total_weight += weight;
      acc += weight * term;
      if (k > mean) {
        // Poisson tail beyond k, bounded by a geometric series.
        const double next = weight * mean / (k + 1);
        if (next / (1.0 - mean / (k + 2)) < chunk_tolerance) break;
      }
    }
    // Every power of the jump matrix preserves mass, so dividing by the kept
    // Poisson weight restores it exactly; the error bound at most doubles.
    acc /= total_weight;
    p.swap(acc);
  }
  p = p.cwiseMax(0.0);
  return ProbabilityVector(std::move(p));
}

std::vector<ProbabilityVector> stationary_distributions(const GeneratorMatrix& g) {
  const Eigen::SparseMatrix<double>& entries = g.entries();
  const std::size_t dim = g.dimension();
  std::size_t n_components = 0;
  const auto component = strongly_connected_components(entries, n_components);

  std::vector<bool> closed(n_components, true);
  std::vector<std::vector<std::size_t>> members(n_components);
  for (std::size_t v = 0; v < dim; ++v) {
    members[component[v]].push_back(v);
    for (Eigen::SparseMatrix<double>::InnerIterator it(entries, static_cast<Eigen::Index>(v)); it;
         ++it) {
      const auto w = static_cast<std::size_t>(it.row());
      if (w != v && it.value() > 0.0 && component[w] != component[v]) {
        closed[component[v]] = false;
      }
    }
  }

  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t c = 0; c < n_components; ++c) {
    if (closed[c]) classes.push_back(std::move(members[c]));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::vector<ProbabilityVector> out;
  out.reserve(classes.size());
  std::vector<Eigen::Index> local(dim, -1);
  for (const auto& cls : classes) {
    if (cls.size() > kStationaryStateCap) {
      throw std::length_error("closed class too large for the dense stationary solver");
    }
    const auto m = static_cast<Eigen::Index>(cls.size());
    for (Eigen::Index a = 0; a < m; ++a) local[cls[static_cast<std::size_t>(a)]] = a;
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rates =
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Zero(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      const auto from = static_cast<Eigen::Index>(cls[static_cast<std::size_t>(a)]);
      for (Eigen::SparseMatrix<double>::InnerIterator it(entries, from); it; ++it) {
        if (it.row() == from) continue;
        rates(a, local[static_cast<std::size_t>(it.row())]) = it.value();
      }
    }
    const Eigen::VectorXd pi = gth_stationary(std::move(rates));
    Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    for (Eigen::Index a = 0; a < m; ++a) {
      full[static_cast<Eigen::Index>(cls[static_cast<std::size_t>(a)])] = pi[a];
    }
    out.emplace_back(std::move(full));
  }
  return out;
}

SpinTape Trajectory::final_tape() const {
  SpinTape tape = initial;
  for (const auto& event : events) tape.flip(event.site);
  return tape;
}

Trajectory kmc_sample(const SpinTape& tape0, const ModelParams& params, double t_end, Rng& rng) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
  require_zero_field(params);
  Trajectory traj{tape0, {}, t_end};
  SpinTape tape = tape0;
  const std::size_t n = tape.size();
  std::vector<double> rates(n);
  for (std::size_t i = 0; i < n; ++i) rates[i] = glauber_rate(tape, i, params);

  double t = 0.0;
  while (true) {
    const double total = std::accumulate(rates.begin(), rates.end(), 0.0);
    if (!(total > 0.0)) break;
    t += rng.exponential(total);
    if (t > t_end) break;
    const double target = rng.uniform() * total;
    std::size_t site = 0;
    double running = 0.0;
    std::size_t last_positive = 0;
    for (; site < n; ++site) {
      if (rates[site] <= 0.0) continue;
      last_positive = site;
      running += rates[site];
      if (target < running) break;
    }
    if (site == n) site = last_positive;  // rounding at the top of the range

    tape.flip(site);
    traj.events.push_back({t, site});
    rates[site] = glauber_rate(tape, site, params);
    if (const auto l = tape.left(site)) rates[*l] = glauber_rate(tape, *l, params);
    if (const auto r = tape.right(site)) rates[*r] = glauber_rate(tape, *r, params);
  }
  return traj;
}

Trajectory kmc_sample(const SpinTape& tape0, const ModelParams& params, double t_end,
                      std::uint64_t seed) {
  Rng rng(seed);
  return kmc_sample(tape0, params, t_end, rng);
}

double detailed_balance_residual(std::size_t n, const ModelParams& params) {
  const auto& phys = params.physical();
  if (!phys) {
    throw std::invalid_argument("detailed balance needs a temperature (J, T, k), not a bare gamma");
  }
  return detailed_balance_residual(n, params, *phys);
}

double detailed_balance_residual(std::size_t n, const ModelParams& rates,
                                 const PhysicalParams& gibbs) {
  require_exact_size(n);
  require_zero_field(rates);
  const double beta = gibbs.beta();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> log_weight(dim);
  for (std::uint64_t s = 0; s < dim; ++s) {
    log_weight[s] = -beta * hamiltonian(decode_state(StateIndex{s}, n, rates.boundary()),
                                        gibbs.coupling);
  }
  double worst = 0.0;
  for (std::uint64_t s = 0; s < dim; ++s) {
    const SpinTape tape = decode_state(StateIndex{s}, n, rates.boundary());
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (s & bit) continue;  // visit each unordered pair once
      const std::uint64_t partner = s | bit;
      const double forward = glauber_rate(tape, i, rates);
      const double backward = glauber_rate(tape.flipped(i), i, rates);
      const double top = std::max(log_weight[s], log_weight[partner]);
      const double flux_a = forward * std::exp(log_weight[s] - top);
      const double flux_b = backward * std::exp(log_weight[partner] - top);
      const double scale = std::max(flux_a, flux_b);
      if (scale > 0.0) worst = std::max(worst, std::abs(flux_a - flux_b) / scale);
    }
  }
  return worst;
}

double mean_magnetization(const ProbabilityVector& p, std::size_t n_sites) {
  if (p.size() != (std::size_t{1} << n_sites)) throw std::invalid_argument("dimension mismatch");
  double m = 0.0;
  for (std::uint64_t s = 0; s < p.size(); ++s) m += state_magnetization(s, n_sites) * p[s];
  return m;
}

std::vector<double> mean_magnetization_curve(const ProbabilityVector& p0, const GeneratorMatrix& g,
                                             std::span<const double> times) {
  if (p0.size() != g.dimension()) throw std::invalid_argument("dimension mismatch");
  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });

  std::vector<double> out(times.size());
  ProbabilityVector p = p0;
  double now = 0.0;
  for (std::size_t idx : order) {
    const double t = times[idx];
    if (!(t >= 0.0)) throw std::invalid_argument("times must be >= 0");
    p = evolve_exact(p, g, t - now);
    now = t;
    out[idx] = mean_magnetization(p, g.n_sites());
  }
  return out;
}

}  // namespace tvoter
