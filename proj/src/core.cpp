#include "turing_voter/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "turing_voter/thermo.hpp"

namespace tvoter {

std::string_view to_string(Boundary boundary) {
  return boundary == Boundary::Periodic ? "periodic" : "open";
}

Boundary parse_boundary(std::string_view text) {
  if (text == "periodic") return Boundary::Periodic;
  if (text == "open") return Boundary::Open;
  throw std::invalid_argument("unknown boundary '" + std::string(text) +
                              "' (expected periodic or open)");
}

SpinTape::SpinTape(std::vector<Spin> symbols, Boundary boundary)
    : symbols_(std::move(symbols)), boundary_(boundary) {
  if (symbols_.empty()) throw std::invalid_argument("tape must have at least one cell");
  for (Spin s : symbols_) {
    if (s != 1 && s != -1) throw std::invalid_argument("tape symbols must be -1 or +1");
  }
}

SpinTape SpinTape::uniform(std::size_t n, Spin value, Boundary boundary) {
  return SpinTape(std::vector<Spin>(n, value), boundary);
}

SpinTape SpinTape::alternating(std::size_t n, Boundary boundary) {
  std::vector<Spin> symbols(n);
  for (std::size_t i = 0; i < n; ++i) symbols[i] = (i % 2 == 0) ? 1 : -1;
  return SpinTape(std::move(symbols), boundary);
}

SpinTape SpinTape::parse(std::string_view pattern, Boundary boundary) {
  std::vector<Spin> symbols;
  symbols.reserve(pattern.size());
  for (char c : pattern) {
    if (c == '+') {
      symbols.push_back(1);
    } else if (c == '-') {
      symbols.push_back(-1);
    } else {
      throw std::invalid_argument("tape pattern may only contain '+' and '-'");
    }
  }
  return SpinTape(std::move(symbols), boundary);
}

std::optional<std::size_t> SpinTape::left(std::size_t site) const {
  if (site > 0) return site - 1;
  if (boundary_ == Boundary::Periodic) return size() - 1;
  return std::nullopt;
}

std::optional<std::size_t> SpinTape::right(std::size_t site) const {
  if (site + 1 < size()) return site + 1;
  if (boundary_ == Boundary::Periodic) return 0;
  return std::nullopt;
}

void SpinTape::flip(std::size_t site) {
  if (site >= size()) throw std::out_of_range("site out of range");
  symbols_[site] = static_cast<Spin>(-symbols_[site]);
}

SpinTape SpinTape::flipped(std::size_t site) const {
  SpinTape copy = *this;
  copy.flip(site);
  return copy;
}

bool SpinTape::is_uniform() const noexcept {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [first = symbols_.front()](Spin s) { return s == first; });
}

int SpinTape::sum() const noexcept {
  int total = 0;
  for (Spin s : symbols_) total += s;
  return total;
}

std::string SpinTape::to_string() const {
  std::string out;
  out.reserve(size());
  for (Spin s : symbols_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

ModelParams ModelParams::from_gamma(double gamma, Boundary boundary, double field) {
  if (!std::isfinite(gamma) || std::abs(gamma) > 1.0) {
    throw std::invalid_argument("gamma must lie in [-1, 1]");
  }
  if (!std::isfinite(field)) throw std::invalid_argument("field must be finite");
  return ModelParams(gamma, std::nullopt, boundary, field);
}

ModelParams ModelParams::from_physical(PhysicalParams physical, Boundary boundary,
                                       double field) {
  if (!std::isfinite(field)) throw std::invalid_argument("field must be finite");
  const double gamma =
      gamma_from_temperature(physical.coupling, physical.temperature, physical.boltzmann);
  return ModelParams(gamma, physical, boundary, field);
}

StateIndex encode_state(const SpinTape& tape) {
  if (tape.size() > kMaxIndexedSites) throw std::length_error("tape too long to index");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < tape.size(); ++i) {
    if (tape[i] > 0) index |= std::uint64_t{1} << i;
  }
  return StateIndex{index};
}

SpinTape decode_state(StateIndex index, std::size_t n, Boundary boundary) {
  if (n == 0 || n > kMaxIndexedSites) throw std::invalid_argument("site count out of range");
  if (index.value >> n != 0) throw std::out_of_range("state index out of range");
  std::vector<Spin> symbols(n);
  for (std::size_t i = 0; i < n; ++i) symbols[i] = ((index.value >> i) & 1U) ? 1 : -1;
  return SpinTape(std::move(symbols), boundary);
}

double hamiltonian(const SpinTape& tape, double coupling, double field) {
  const std::size_t n = tape.size();
  const std::size_t bonds = tape.boundary() == Boundary::Periodic ? n : n - 1;
  int bond_sum = 0;
  for (std::size_t i = 0; i < bonds; ++i) bond_sum += tape[i] * tape[(i + 1) % n];
  return -coupling * bond_sum - field * tape.sum();
}

double magnetization(const SpinTape& tape) {
  return static_cast<double>(tape.sum()) / static_cast<double>(tape.size());
}

}  // namespace tvoter
