#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace smurf {

/// Largest CPT-gate size accepted anywhere (N^M).
inline constexpr std::size_t kMaxTableSize = 4096;

/// N^M, throwing ConfigError when N < 2, M < 1 or the product exceeds kMaxTableSize.
std::size_t table_size(int n_states, int arity);

/// Flat CPT-gate index of a universal-radix codeword.
///
/// `digits[j]` is the state of chain j+1, so digits[0] (= i_1) is the least
/// significant digit: t = sum_j digits[j] * N^j. Throws on out-of-range digits.
std::size_t codeword_index(std::span<const int> digits, int n_states);

/// Mixed-radix form: chain j has radices[j] states.
std::size_t codeword_index(std::span<const int> digits, std::span<const int> radices);

/// Inverse of codeword_index: digits i_1..i_M of flat index t.
std::vector<int> codeword_digits(std::size_t index, std::span<const int> radices);

/// Joint stationary distribution of M independent chains, laid out by
/// codeword_index. Entry t is the product of each chain's steady probability
/// for its digit.
std::vector<double> joint_steady_probs(int n_states, std::span<const double> pxs);
std::vector<double> joint_steady_probs(std::span<const int> radices,
                                       std::span<const double> pxs);

/// Kronecker product of per-chain vectors in codeword order (factors[0] is
/// the least significant digit). `out` must have the product size.
void kron_into(std::span<const std::span<const double>> factors, std::span<double> out);

}  // namespace smurf
