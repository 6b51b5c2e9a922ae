#include "smurf/codeword.hpp"

#include <string>

#include "smurf/chain_fsm.hpp"
#include "smurf/errors.hpp"

namespace smurf {

std::size_t table_size(int n_states, int arity) {
  if (n_states < 2) {
    throw ConfigError("state count N must be >= 2, got " + std::to_string(n_states));
  }
  if (arity < 1) throw ConfigError("arity M must be >= 1, got " + std::to_string(arity));
  std::size_t size = 1;
  for (int j = 0; j < arity; ++j) {
    size *= static_cast<std::size_t>(n_states);
    if (size > kMaxTableSize) {
      throw ConfigError("N^M = " + std::to_string(n_states) + "^" + std::to_string(arity) +
                        " exceeds the limit of " + std::to_string(kMaxTableSize) +
                        " theta-gates; reduce --n-states or --arity");
    }
  }
  return size;
}

std::size_t codeword_index(std::span<const int> digits, int n_states) {
  std::size_t t = 0;
  std::size_t scale = 1;
  for (int d : digits) {
    if (d < 0 || d >= n_states) {
      throw ConfigError("codeword digit " + std::to_string(d) + " outside [0, " +
                        std::to_string(n_states - 1) + "]");
    }
    t += static_cast<std::size_t>(d) * scale;
    scale *= static_cast<std::size_t>(n_states);
  }
  return t;
}

std::size_t codeword_index(std::span<const int> digits, std::span<const int> radices) {
  if (digits.size() != radices.size()) throw ConfigError("codeword length mismatch");
  std::size_t t = 0;
  std::size_t scale = 1;
  for (std::size_t j = 0; j < digits.size(); ++j) {
    if (digits[j] < 0 || digits[j] >= radices[j]) {
      throw ConfigError("codeword digit " + std::to_string(digits[j]) + " outside [0, " +
                        std::to_string(radices[j] - 1) + "]");
    }
    t += static_cast<std::size_t>(digits[j]) * scale;
    scale *= static_cast<std::size_t>(radices[j]);
  }
  return t;
}

std::vector<int> codeword_digits(std::size_t index, std::span<const int> radices) {
  std::vector<int> digits(radices.size());
  for (std::size_t j = 0; j < radices.size(); ++j) {
    digits[j] = static_cast<int>(index % static_cast<std::size_t>(radices[j]));
    index /= static_cast<std::size_t>(radices[j]);
  }
  if (index != 0) throw ConfigError("flat codeword index out of range");
  return digits;
}

void kron_into(std::span<const std::span<const double>> factors, std::span<double> out) {
  // Grow the product one factor at a time; the newest factor becomes the
  // more significant digit.
  std::size_t len = 1;
  out[0] = 1.0;
  for (const auto& f : factors) {
    const std::size_t n = f.size();
    for (std::size_t d = n; d-- > 0;) {
      for (std::size_t k = 0; k < len; ++k) out[d * len + k] = out[k] * f[d];
    }
    len *= n;
  }
}

std::vector<double> joint_steady_probs(std::span<const int> radices,
                                       std::span<const double> pxs) {
  if (radices.size() != pxs.size()) {
    throw ConfigError("expected " + std::to_string(radices.size()) + " input probabilities, got " +
                      std::to_string(pxs.size()));
  }
  std::vector<std::vector<double>> chains;
  std::vector<std::span<const double>> factors;
  std::size_t total = 1;
  for (std::size_t j = 0; j < radices.size(); ++j) {
    chains.push_back(chain_steady_probs(radices[j], Probability(pxs[j])));
    total *= static_cast<std::size_t>(radices[j]);
  }
  for (const auto& c : chains) factors.emplace_back(c);
  std::vector<double> out(total);
  kron_into(factors, out);
  return out;
}

std::vector<double> joint_steady_probs(int n_states, std::span<const double> pxs) {
  std::vector<int> radices(pxs.size(), n_states);
  return joint_steady_probs(radices, pxs);
}

}  // namespace smurf
