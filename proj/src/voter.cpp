#include "turing_voter/voter.hpp"

#include <cmath>
#include <stdexcept>

#include "turing_voter/dynamics.hpp"

namespace tvoter {

MachineTuple voter_tuple() {
  return MachineTuple{
      .states = {"run", "accept"},
      .alphabet = {-1, 1},
      .initial_state = "run",
      .blank = -1,
      .accepting_states = {"accept"},
      .delta = {},
  };
}

double flip_probability(const SpinTape& tape, std::size_t site, double gamma) {
  if (site >= tape.size()) throw std::out_of_range("site out of range");
  if (!(std::abs(gamma) <= 1.0)) throw std::invalid_argument("gamma must lie in [-1, 1]");
  const auto l = tape.left(site);
  const auto r = tape.right(site);
  if (!l || !r) {
    throw std::invalid_argument("open-tape endpoint has a single neighbour; use glauber_rate");
  }
  const int local = tape[site] * (tape[*l] + tape[*r]);
  return 0.5 * (1.0 - 0.5 * gamma * local);
}

TuringVoter::TuringVoter(SpinTape tape, ModelParams params, std::uint64_t seed)
    : tape_(std::move(tape)), params_(params), rng_(seed) {
  if (params_.field() != 0.0) throw std::invalid_argument("dynamics require h = 0");
  if (params_.boundary() != tape_.boundary()) {
    throw std::invalid_argument("tape and parameter boundary conditions differ");
  }
}

StepEvent TuringVoter::step() {
  if (status_ != MachineStatus::Running) throw std::logic_error("machine is not running");
  const auto site = static_cast<std::size_t>(rng_.below(tape_.size()));
  const double p = glauber_rate(tape_, site, params_);
  // Always consume the draw so the stream does not depend on p.
  const bool flipped = rng_.uniform() < p;
  if (flipped) tape_.flip(site);
  ++step_count_;
  return StepEvent{site, flipped};
}

Outcome TuringVoter::outcome() const {
  std::optional<Spin> consensus;
  if (status_ == MachineStatus::Halted) consensus = tape_[0];
  return Outcome{status_, consensus, tape_, step_count_};
}

}  // namespace tvoter
