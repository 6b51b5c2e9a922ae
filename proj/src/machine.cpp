#include "smurf/machine.hpp"

#include <algorithm>
#include <string>

#include "smurf/codeword.hpp"
#include "smurf/errors.hpp"

namespace smurf {

SmurfMachine::SmurfMachine(const WeightTable& table, MachineOptions options)
    : SmurfMachine(table.radices(),
                   std::vector<double>(table.weights().begin(), table.weights().end()),
                   options) {}

SmurfMachine::SmurfMachine(std::vector<int> radices, std::vector<double> weights,
                           MachineOptions options)
    : radices_(std::move(radices)), weights_(std::move(weights)), options_(options) {
  if (radices_.empty()) throw ConfigError("machine needs at least one chain");
  std::size_t size = 1;
  for (int r : radices_) {
    if (r < 2) throw ConfigError("every chain needs at least 2 states");
    size *= static_cast<std::size_t>(r);
    if (size > kMaxTableSize) throw ConfigError("CPT-gate larger than 4096 entries");
  }
  if (weights_.size() != size) {
    throw ConfigError("machine needs " + std::to_string(size) + " weights, got " +
                      std::to_string(weights_.size()));
  }
  for (double w : weights_) {
    if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("machine weight outside [0,1]");
  }
  if (options_.burn_in < 0) throw ConfigError("burn-in must be non-negative");
  for (int r : radices_) chains_.emplace_back(r, 0);
  reset();
  reseed(options_.seed);
}

std::size_t SmurfMachine::codeword() const noexcept {
  std::size_t t = 0;
  std::size_t scale = 1;
  for (std::size_t j = 0; j < chains_.size(); ++j) {
    t += static_cast<std::size_t>(chains_[j].state()) * scale;
    scale *= static_cast<std::size_t>(radices_[j]);
  }
  return t;
}

void SmurfMachine::reset() {
  for (auto& c : chains_) c.reset(std::min(options_.initial_state, c.n_states() - 1));
}

void SmurfMachine::reseed(std::uint64_t seed) {
  options_.seed = seed;
  input_sources_.clear();
  output_sources_.clear();
  bus_.reset();
  const std::size_t m = chains_.size();
  if (options_.rng == RngKind::shared_lagged) {
    bus_.emplace(seed, static_cast<std::uint32_t>(m + weights_.size() - 1));
    return;
  }
  input_sources_.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    input_sources_.push_back(RngSource::make(options_.rng, derive_seed(seed, j)));
  }
  output_sources_.reserve(weights_.size());
  for (std::size_t t = 0; t < weights_.size(); ++t) {
    output_sources_.push_back(RngSource::make(options_.rng, derive_seed(seed, m + t)));
  }
}

double SmurfMachine::input_draw(std::size_t j) {
  return bus_ ? bus_->tap(static_cast<std::uint32_t>(j)) : input_sources_[j].next();
}

double SmurfMachine::output_draw(std::size_t t) {
  return bus_ ? bus_->tap(static_cast<std::uint32_t>(chains_.size() + t))
              : output_sources_[t].next();
}

std::uint8_t SmurfMachine::step(std::span<const double> pxs) {
  if (pxs.size() != chains_.size()) {
    throw ConfigError("expected " + std::to_string(chains_.size()) +
                      " input probabilities, got " + std::to_string(pxs.size()));
  }
  if (bus_) bus_->advance();
  for (std::size_t j = 0; j < chains_.size(); ++j) {
    chains_[j].step(input_draw(j) < pxs[j] ? 1 : 0);
  }
  const std::size_t t = codeword();
  return output_draw(t) < weights_[t] ? 1 : 0;
}

double smurf_run(SmurfMachine& machine, std::span<const double> pxs, long length,
                 std::uint64_t seed) {
  if (length < 1) throw ConfigError("bitstream length must be at least 1");
  for (double p : pxs) (void)Probability(p);
  machine.reset();
  machine.reseed(seed);
  for (long k = 0; k < machine.options().burn_in; ++k) machine.step(pxs);
  long ones = 0;
  for (long k = 0; k < length; ++k) ones += machine.step(pxs);
  return static_cast<double>(ones) / static_cast<double>(length);
}

double smurf_expected_output(std::span<const int> radices, std::span<const double> weights,
                             std::span<const double> pxs) {
  const auto probs = joint_steady_probs(radices, pxs);
  if (probs.size() != weights.size()) {
    throw ConfigError("weight count does not match the codeword space");
  }
  double y = 0.0;
  for (std::size_t t = 0; t < probs.size(); ++t) y += probs[t] * weights[t];
  return y;
}

Probability smurf_expected_output(const WeightTable& table, std::span<const double> pxs) {
  if (pxs.size() != static_cast<std::size_t>(table.arity())) {
    throw ConfigError("table has arity " + std::to_string(table.arity()) + ", got " +
                      std::to_string(pxs.size()) + " inputs");
  }
  const auto radices = table.radices();
  const double y = smurf_expected_output(radices, table.weights(), pxs);
  return Probability(std::clamp(y, 0.0, 1.0));
}

}  // namespace smurf
