#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smurf/affine_map.hpp"

namespace smurf {

struct SolverDiagnostics {
  long iterations = 0;
  double phi = 0.0;
  double residual = 0.0;        // max |projected gradient|
  double regularization = 0.0;  // Tikhonov term added to the H diagonal
  friend bool operator==(const SolverDiagnostics&, const SolverDiagnostics&) = default;
};

struct TableMetadata {
  std::string target_name;
  std::optional<std::string> expression;
  std::vector<AffineMap> input_maps;  // one per input variable
  AffineMap output_map;
  int grid_resolution = 0;
  SolverDiagnostics solver;
  std::uint64_t master_seed = 0;
  friend bool operator==(const TableMetadata&, const TableMetadata&) = default;
};

/// The N^M θ-gate thresholds of a SMURF, indexed by flat codeword.
class WeightTable {
 public:
  /// Throws ConfigError unless weights.size() == N^M and every weight is in [0, 1].
  WeightTable(int n_states, int arity, std::vector<double> weights);
  static WeightTable constant(int n_states, int arity, double value);

  int n_states() const noexcept { return n_; }
  int arity() const noexcept { return m_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double weight(std::size_t t) const { return weights_.at(t); }
  void set_weight(std::size_t t, double value);
  std::vector<int> radices() const { return std::vector<int>(m_, n_); }

  TableMetadata metadata;

  friend bool operator==(const WeightTable&, const WeightTable&) = default;

 private:
  int n_;
  int m_;
  std::vector<double> weights_;
};

}  // namespace smurf
