#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smurf/probability.hpp"

namespace smurf {

/// Saturating N-state chain: a 1 moves one state right, a 0 one state left.
class ChainFsm {
 public:
  explicit ChainFsm(int n_states, int initial_state = 0);

  int n_states() const noexcept { return n_; }
  int state() const noexcept { return state_; }
  void reset(int state);

  void step(std::uint8_t bit) noexcept {
    if (bit) {
      if (state_ + 1 < n_) ++state_;
    } else if (state_ > 0) {
      --state_;
    }
  }

 private:
  int n_;
  int state_;
};

/// Pure form of ChainFsm::step.
ChainFsm fsm_step(ChainFsm chain, std::uint8_t bit);

/// Stationary distribution of the chain driven by Bernoulli(px) input bits.
///
/// P_i is proportional to px^i (1 - px)^(N-1-i), which equals t^i / sum_j t^j
/// with t = px / (1 - px) on (0, 1) but stays finite at both endpoints:
/// px = 0 gives the point mass on state 0 and px = 1 the point mass on N-1.
std::vector<double> chain_steady_probs(int n_states, Probability px);

/// Writes chain_steady_probs into `out` (size N) without allocating.
void chain_steady_probs_into(int n_states, double px, std::span<double> out);

/// Power iteration on the explicit N x N birth-death transition matrix. Used
/// as an independent check of the closed form. Requires px in (0, 1).
/// Throws SolverError if successive iterates still differ by >= tol (max norm)
/// after max_iterations.
std::vector<double> steady_probs_oracle(int n_states, Probability px, double tol = 1e-13,
                                        long max_iterations = 1'000'000);

/// Brown-Card style output: probability of occupying the upper N/2 states.
/// Throws for odd N.
Probability tanh_fsm_output(int n_states, Probability px);

}  // namespace smurf
