#ifndef TURING_VOTER_RNG_HPP
#define TURING_VOTER_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace tvoter {

/// SplitMix64 finalizer; used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of trajectory `index` under `master`. Depends only on the pair, so
/// the assignment of trajectories to workers never changes a stream.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Random stream consulted by the machine. Draws are built from raw engine
/// bits so sequences do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform on the open interval (0, 1).
  double open_uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Exponential with the given rate; strictly positive.
  double exponential(double rate) { return -std::log(open_uniform()) / rate; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tvoter

#endif  // TURING_VOTER_RNG_HPP
