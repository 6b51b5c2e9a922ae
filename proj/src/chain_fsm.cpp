#include "smurf/chain_fsm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smurf/errors.hpp"

namespace smurf {
namespace {

void require_states(int n) {
  if (n < 2) throw ConfigError("chain FSM needs at least 2 states, got " + std::to_string(n));
}

}  // namespace

ChainFsm::ChainFsm(int n_states, int initial_state) : n_(n_states), state_(0) {
  require_states(n_states);
  reset(initial_state);
}

void ChainFsm::reset(int state) {
  if (state < 0 || state >= n_) {
    throw ConfigError("chain state " + std::to_string(state) + " outside [0, " +
                      std::to_string(n_ - 1) + "]");
  }
  state_ = state;
}

ChainFsm fsm_step(ChainFsm chain, std::uint8_t bit) {
  chain.step(bit);
  return chain;
}

void chain_steady_probs_into(int n_states, double px, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  if (px <= 0.0) {
    out[0] = 1.0;
    return;
  }
  if (px >= 1.0) {
    out[n_states - 1] = 1.0;
    return;
  }
  const double q = 1.0 - px;
  // Build px^i q^(N-1-i) by forward and backward products.
  double up = 1.0;
  for (int i = 0; i < n_states; ++i) {
    out[i] = up;
    up *= px;
  }
  double down = 1.0;
  for (int i = n_states - 1; i >= 0; --i) {
    out[i] *= down;
    down *= q;
  }
  double sum = 0.0;
  for (double v : out) sum += v;
  for (double& v : out) v /= sum;
}

std::vector<double> chain_steady_probs(int n_states, Probability px) {
  require_states(n_states);
  std::vector<double> out(n_states);
  chain_steady_probs_into(n_states, px.value(), out);
  return out;
}

std::vector<double> steady_probs_oracle(int n_states, Probability px, double tol,
                                        long max_iterations) {
  require_states(n_states);
  const double p = px.value();
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("oracle requires px in (0, 1)");
  const double q = 1.0 - p;
  const int n = n_states;

  // Row-stochastic transition matrix, dense on purpose.
  std::vector<double> T(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    T[i * n + std::min(i + 1, n - 1)] += p;
    T[i * n + std::max(i - 1, 0)] += q;
  }

  std::vector<double> pi(n, 1.0 / n), nxt(n);
  for (long it = 0; it < max_iterations; ++it) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) nxt[j] += pi[i] * T[i * n + j];
    }
    double diff = 0.0;
    for (int j = 0; j < n; ++j) diff = std::max(diff, std::abs(nxt[j] - pi[j]));
    pi.swap(nxt);
    if (diff < tol) return pi;
  }
  throw SolverError("steady-state power iteration did not converge in " +
                    std::to_string(max_iterations) + " iterations");
}

Probability tanh_fsm_output(int n_states, Probability px) {
  require_states(n_states);
  if (n_states % 2 != 0) {
    throw ConfigError("tanh FSM output needs an even state count, got " +
                      std::to_string(n_states));
  }
  const auto upper_mass = [n_states](double p) {
    std::vector<double> probs(n_states);
    chain_steady_probs_into(n_states, p, probs);
    double sum = 0.0;
    for (int i = n_states / 2; i < n_states; ++i) sum += probs[i];
    return sum;
  };
  // Evaluate on the lower half and reflect, so f(1 - p) == 1 - f(p) bit-exactly
  // whenever 1 - (1 - p) == p in floating point.
  const double p = px.value();
  if (p == 0.5) return Probability(0.5);
  const double y = p < 0.5 ? upper_mass(p) : 1.0 - upper_mass(1.0 - p);
  return Probability(std::clamp(y, 0.0, 1.0));
}

}  // namespace smurf
