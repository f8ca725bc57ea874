#ifndef TURING_VOTER_VOTER_HPP
#define TURING_VOTER_VOTER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "turing_voter/core.hpp"
#include "turing_voter/rng.hpp"

namespace tvoter {

/// The machine tuple <Q, Sigma, iota, blank, A, delta>. Only the voter
/// instance is ever executed; its transition relation is replaced by the
/// random cell-selection rule, so `delta` stays empty for it.
struct MachineTuple {
  struct Transition {
    std::string from_state;
    Spin read;
    std::string to_state;
    Spin write;
    char move;  // 'L' or 'R'
  };

  std::vector<std::string> states;
  std::vector<Spin> alphabet;
  std::string initial_state;
  Spin blank;
  std::vector<std::string> accepting_states;
  std::vector<Transition> delta;
};

/// Single-tape, two-symbol tuple of the voter machine.
MachineTuple voter_tuple();

/// Flip probability of a cell with two neighbours:
/// 1/2 [1 - (gamma/2) x_i (x_left + x_right)].
/// Throws for the endpoints of an open tape, which have a single neighbour and
/// follow the endpoint rule of glauber_rate().
double flip_probability(const SpinTape& tape, std::size_t site, double gamma);

enum class MachineStatus { Running, Halted, Exhausted };

struct StepEvent {
  std::size_t site;
  bool flipped;
};

struct Outcome {
  MachineStatus status;
  std::optional<Spin> consensus;  // set iff status == Halted
  SpinTape final_tape;
  std::uint64_t steps;            // total step count of the machine
};

/// Discrete-time voter machine. Each step selects a cell uniformly and flips
/// it with its rate as probability; one step advances machine time by 1/N.
class TuringVoter {
 public:
  TuringVoter(SpinTape tape, ModelParams params, std::uint64_t seed);

  StepEvent step();

  /// Steps until consensus (Halted) or until `max_steps` further steps have
  /// been taken (Exhausted). `on_step` is called after every step.
  template <typename OnStep>
  Outcome run_until_halt(std::uint64_t max_steps, OnStep&& on_step);
  Outcome run_until_halt(std::uint64_t max_steps) {
    return run_until_halt(max_steps, [](const StepEvent&) {});
  }

  const SpinTape& tape() const noexcept { return tape_; }
  const ModelParams& params() const noexcept { return params_; }
  std::uint64_t step_count() const noexcept { return step_count_; }
  double machine_time() const noexcept {
    return static_cast<double>(step_count_) / static_cast<double>(tape_.size());
  }
  MachineStatus status() const noexcept { return status_; }

 private:
  Outcome outcome() const;

  SpinTape tape_;
  ModelParams params_;
  Rng rng_;
  std::uint64_t step_count_ = 0;
  MachineStatus status_ = MachineStatus::Running;
};

template <typename OnStep>
Outcome TuringVoter::run_until_halt(std::uint64_t max_steps, OnStep&& on_step) {
  if (status_ != MachineStatus::Running) return outcome();
  for (std::uint64_t taken = 0;; ++taken) {
    if (tape_.is_uniform()) {
      status_ = MachineStatus::Halted;
      break;
    }
    if (taken == max_steps) {
      status_ = MachineStatus::Exhausted;
      break;
    }
    on_step(step());
  }
  return outcome();
}

}  // namespace tvoter

#endif  // TURING_VOTER_VOTER_HPP
