#pragma once

#include <Eigen/Dense>

#include "smurf/qp.hpp"
#include "smurf/quadrature.hpp"
#include "smurf/targets.hpp"
#include "smurf/weight_table.hpp"

namespace smurf {

struct SynthesisOptions {
  int grid_resolution = 0;             // 0: default_grid_resolution(M)
  double regularization_scale = 1e-10; // lambda = scale * trace(H) / N^M
  QpOptions qp;
};

/// Least-squares fit of the steady-state output surface to a target:
/// minimize phi(b) = b^T H b + 2 c^T b over 0 <= b <= 1.
struct SynthesisProblem {
  int n_states;
  int arity;
  QuadratureGrid grid;
  Eigen::MatrixXd h;
  Eigen::VectorXd c;
  std::string target_name;
  double regularization = 0.0;
};

SynthesisProblem build_problem(const TargetFunction& target, int n_states, int arity,
                               const SynthesisOptions& options = {});

/// Solves the box QP; metadata carries solver diagnostics and the grid.
WeightTable solve_weights(const SynthesisProblem& problem, const SynthesisOptions& options = {});

/// build_problem + solve_weights, with target name, expression and maps
/// attached to the table metadata. Requires N^M <= 4096.
WeightTable synthesize(const TargetFunction& target, int n_states, int arity,
                       const SynthesisOptions& options = {});

}  // namespace smurf
