#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "smurf/rng.hpp"
#include "smurf/targets.hpp"
#include "smurf/weight_table.hpp"

namespace smurf {

struct EvalOptions {
  std::vector<long> lengths{64};
  long burn_in = 0;
  std::uint64_t seed = 0;
  RngKind rng = RngKind::independent;
  int grid_points = 0;  // per dimension; 0 picks 21 (M <= 2), 9 (M = 3), 5 beyond
};

int default_eval_points(int arity);

struct EvalRecord {
  long length = 0;
  std::size_t point = 0;
  std::vector<double> inputs;  // raw input coordinates
  std::vector<double> probs;   // normalized input probabilities
  double target = 0.0;         // normalized target value
  double analytic = 0.0;       // infinite-bitstream SMURF output
  double simulated = 0.0;      // mean of `length` simulated output bits
  double abs_error = 0.0;      // |simulated - target|
  double abs_error_fit = 0.0;  // |simulated - analytic|
};

struct EvalAggregate {
  int n_states = 0;
  long length = 0;
  double avg_abs_error = 0.0;
  double max_abs_error = 0.0;
  double avg_abs_error_fit = 0.0;
  double avg_fit_gap = 0.0;  // mean |analytic - target|, the fit's own error
};

/// Per-point simulation results and per-length aggregates. The error metric is
/// the grid mean of |simulated - normalized target| in normalized units.
struct EvalReport {
  int n_states = 0;
  int arity = 0;
  std::vector<EvalRecord> records;  // grouped by length, points in grid order
  std::vector<EvalAggregate> aggregates;
};

/// Grid point sub-seed: depends only on (master seed, point index, length).
std::uint64_t eval_point_seed(std::uint64_t master, std::size_t point, long length);

/// Simulates the table at every grid point for every length. OpenMP-parallel
/// over points; bit-identical to reference::evaluate_table.
EvalReport evaluate_table(const WeightTable& table, const TargetFunction& target,
                          const EvalOptions& options);

/// One aggregate row per (table, length), in input order.
std::vector<EvalAggregate> sweep_tables(const std::vector<WeightTable>& tables,
                                        const TargetFunction& target, const EvalOptions& options);

void write_eval_csv(const EvalReport& report, std::ostream& out);
void write_sweep_csv(const std::vector<EvalAggregate>& rows, std::ostream& out);

namespace reference {
EvalReport evaluate_table(const WeightTable& table, const TargetFunction& target,
                          const EvalOptions& options);
}  // namespace reference

}  // namespace smurf
