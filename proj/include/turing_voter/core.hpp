#ifndef TURING_VOTER_CORE_HPP
#define TURING_VOTER_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tvoter {

/// Tape symbol / spin value. Always -1 or +1.
using Spin = std::int8_t;

enum class Boundary { Periodic, Open };

std::string_view to_string(Boundary boundary);
Boundary parse_boundary(std::string_view text);

/// A finite two-symbol tape. The same object serves as the Turing tape and
/// as the Ising spin configuration.
class SpinTape {
 public:
  SpinTape(std::vector<Spin> symbols, Boundary boundary);

  static SpinTape uniform(std::size_t n, Spin value, Boundary boundary);
  /// Alternating +1,-1,+1,... of length n.
  static SpinTape alternating(std::size_t n, Boundary boundary);
  /// Parses a string of '+' and '-' characters.
  static SpinTape parse(std::string_view pattern, Boundary boundary);

  std::size_t size() const noexcept { return symbols_.size(); }
  Boundary boundary() const noexcept { return boundary_; }
  Spin operator[](std::size_t site) const { return symbols_[site]; }
  std::span<const Spin> symbols() const noexcept { return symbols_; }

  /// Left/right neighbour of a site, if it has one. Under periodic boundary
  /// every site has both (a single cell is its own neighbour).
  std::optional<std::size_t> left(std::size_t site) const;
  std::optional<std::size_t> right(std::size_t site) const;

  void flip(std::size_t site);
  SpinTape flipped(std::size_t site) const;

  bool is_uniform() const noexcept;
  int sum() const noexcept;
  std::string to_string() const;

  friend bool operator==(const SpinTape&, const SpinTape&) = default;

 private:
  std::vector<Spin> symbols_;
  Boundary boundary_;
};

struct PhysicalParams {
  double coupling = 0.0;     // J
  double temperature = 1.0;  // T > 0
  double boltzmann = 1.0;    // k > 0

  double beta() const noexcept { return 1.0 / (boltzmann * temperature); }
};

/// Dynamics parameters. gamma is either given directly or derived from
/// (J, T, k) as tanh(2J/kT).
class ModelParams {
 public:
  static ModelParams from_gamma(double gamma, Boundary boundary = Boundary::Periodic,
                                double field = 0.0);
  static ModelParams from_physical(PhysicalParams physical,
                                   Boundary boundary = Boundary::Periodic,
                                   double field = 0.0);

  double gamma() const noexcept { return gamma_; }
  const std::optional<PhysicalParams>& physical() const noexcept { return physical_; }
  Boundary boundary() const noexcept { return boundary_; }
  double field() const noexcept { return field_; }

 private:
  ModelParams(double gamma, std::optional<PhysicalParams> physical, Boundary boundary,
              double field)
      : gamma_(gamma), physical_(physical), boundary_(boundary), field_(field) {}

  double gamma_;
  std::optional<PhysicalParams> physical_;
  Boundary boundary_;
  double field_;
};

/// Canonical index of a configuration: bit i is set iff site i holds +1.
struct StateIndex {
  std::uint64_t value = 0;
  friend auto operator<=>(const StateIndex&, const StateIndex&) = default;
};

/// Largest tape that can be indexed into a 64-bit StateIndex.
inline constexpr std::size_t kMaxIndexedSites = 63;

StateIndex encode_state(const SpinTape& tape);
SpinTape decode_state(StateIndex index, std::size_t n, Boundary boundary = Boundary::Periodic);

/// -J * sum over bonds s_i s_{i+1} - h * sum s_i. Open chains have n-1 bonds,
/// periodic chains n (including the wrap bond).
double hamiltonian(const SpinTape& tape, double coupling, double field = 0.0);

double magnetization(const SpinTape& tape);

}  // namespace tvoter

#endif  // TURING_VOTER_CORE_HPP
