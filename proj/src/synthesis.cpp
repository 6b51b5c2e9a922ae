#include "smurf/synthesis.hpp"

#include <string>

#include "smurf/assembly.hpp"
#include "smurf/codeword.hpp"
#include "smurf/errors.hpp"

namespace smurf {

SynthesisProblem build_problem(const TargetFunction& target, int n_states, int arity,
                               const SynthesisOptions& options) {
  const std::size_t size = table_size(n_states, arity);
  if (target.arity != arity) {
    throw ConfigError("target '" + target.name + "' takes " + std::to_string(target.arity) +
                      " inputs but arity " + std::to_string(arity) + " was requested");
  }
  const int resolution =
      options.grid_resolution > 0 ? options.grid_resolution : default_grid_resolution(arity);
  QuadratureGrid grid(arity, resolution);
  Eigen::MatrixXd h = assemble_H(n_states, arity, grid);
  Eigen::VectorXd c = assemble_c(target, n_states, arity, grid);
  const double lambda = options.regularization_scale * h.trace() / static_cast<double>(size);
  return SynthesisProblem{n_states, arity, std::move(grid), std::move(h), std::move(c),
                          target.name, lambda};
}

WeightTable solve_weights(const SynthesisProblem& problem, const SynthesisOptions& options) {
  const QpResult qp = solve_box_qp(problem.h, problem.c, problem.regularization, options.qp);
  std::vector<double> w(qp.x.data(), qp.x.data() + qp.x.size());
  WeightTable table(problem.n_states, problem.arity, std::move(w));
  table.metadata.target_name = problem.target_name;
  table.metadata.grid_resolution = problem.grid.resolution();
  table.metadata.solver = SolverDiagnostics{qp.iterations, qp.phi, qp.residual,
                                            problem.regularization};
  return table;
}

WeightTable synthesize(const TargetFunction& target, int n_states, int arity,
                       const SynthesisOptions& options) {
  const SynthesisProblem problem = build_problem(target, n_states, arity, options);
  WeightTable table = solve_weights(problem, options);
  table.metadata.expression = target.expression;
  table.metadata.input_maps = target.input_maps();
  table.metadata.output_map = target.output_map();
  return table;
}

}  // namespace smurf
