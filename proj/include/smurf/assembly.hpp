#pragma once

#include <Eigen/Dense>

#include "smurf/quadrature.hpp"
#include "smurf/targets.hpp"

namespace smurf {

/// Basis matrix: column k holds the joint steady vector P_s(node k) for every
/// codeword s (rows in codeword order). OpenMP-parallel over nodes.
Eigen::MatrixXd basis_at_nodes(int n_states, int arity, const QuadratureGrid& grid);

/// H[u][v] = integral over [0,1]^M of P_u(P) P_v(P) dP by tensor quadrature.
/// Parallel kernel: weighted basis Gram product.
Eigen::MatrixXd assemble_H(int n_states, int arity, const QuadratureGrid& grid);

/// c_t = -integral of T(P) P_t(P) dP. Target evaluations run in parallel;
/// throws ConfigError if the target is non-finite at any node.
Eigen::VectorXd assemble_c(const TargetFunction& target, int n_states, int arity,
                           const QuadratureGrid& grid);

/// Exact tensor factorization of H: the Kronecker product of the univariate
/// Gram matrices (factor of chain 1 innermost).
Eigen::MatrixXd assemble_H_factored(int n_states, int arity, const QuadratureGrid& grid);

namespace reference {

// Serial node-by-node accumulation. Kept for testing the parallel kernels.
Eigen::MatrixXd assemble_H(int n_states, int arity, const QuadratureGrid& grid);
Eigen::VectorXd assemble_c(const TargetFunction& target, int n_states, int arity,
                           const QuadratureGrid& grid);

}  // namespace reference
}  // namespace smurf
