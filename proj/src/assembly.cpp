#include "smurf/assembly.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>

#include "smurf/chain_fsm.hpp"
#include "smurf/codeword.hpp"
#include "smurf/errors.hpp"

namespace smurf {
namespace {

/// Steady vectors of one chain at every 1-D node: row r = node r.
Eigen::MatrixXd axis_basis(int n_states, const GaussLegendre& rule) {
  const auto r = static_cast<Eigen::Index>(rule.nodes.size());
  Eigen::MatrixXd out(r, n_states);
  std::vector<double> tmp(n_states);
  for (Eigen::Index i = 0; i < r; ++i) {
    chain_steady_probs_into(n_states, rule.nodes[i], tmp);
    for (int s = 0; s < n_states; ++s) out(i, s) = tmp[s];
  }
  return out;
}

void basis_column(const QuadratureGrid& grid, const Eigen::MatrixXd& axis, std::size_t k,
                  std::span<double> out) {
  const int m = grid.dims();
  const int n = static_cast<int>(axis.cols());
  std::vector<std::vector<double>> rows(m, std::vector<double>(n));
  std::vector<std::span<const double>> factors;
  for (int d = 0; d < m; ++d) {
    const auto r = static_cast<Eigen::Index>(grid.axis_index(k, d));
    for (int s = 0; s < n; ++s) rows[d][s] = axis(r, s);
    factors.emplace_back(rows[d]);
  }
  kron_into(factors, out);
}

void check_finite(const TargetFunction& target, double value) {
  if (!std::isfinite(value)) {
    throw ConfigError("target '" + target.name + "' is not finite at a quadrature node");
  }
}

}  // namespace

Eigen::MatrixXd basis_at_nodes(int n_states, int arity, const QuadratureGrid& grid) {
  const std::size_t k_size = table_size(n_states, arity);
  if (grid.dims() != arity) throw ConfigError("quadrature grid dimension does not match arity");
  const Eigen::MatrixXd axis = axis_basis(n_states, grid.rule());
  const auto nodes = static_cast<long>(grid.node_count());
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(k_size), nodes);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < nodes; ++k) {
    basis_column(grid, axis, static_cast<std::size_t>(k),
                 std::span<double>(phi.col(k).data(), k_size));
  }
  return phi;
}

Eigen::MatrixXd assemble_H(int n_states, int arity, const QuadratureGrid& grid) {
  Eigen::MatrixXd phi = basis_at_nodes(n_states, arity, grid);
  const auto nodes = static_cast<long>(grid.node_count());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < nodes; ++k) phi.col(k) *= std::sqrt(grid.weight(k));
  // H = (phi sqrt(W)) (phi sqrt(W))^T; Eigen's GEMM is OpenMP-parallel.
  const Eigen::Index size = phi.rows();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  h.selfadjointView<Eigen::Lower>().rankUpdate(phi);
  h.triangularView<Eigen::StrictlyUpper>() = h.transpose();
  return h;
}

Eigen::VectorXd assemble_c(const TargetFunction& target, int n_states, int arity,
                           const QuadratureGrid& grid) {
  if (target.arity != arity) {
    throw ConfigError("target '" + target.name + "' has arity " + std::to_string(target.arity) +
                      ", expected " + std::to_string(arity));
  }
  const Eigen::MatrixXd phi = basis_at_nodes(n_states, arity, grid);
  const auto nodes = static_cast<long>(grid.node_count());
  Eigen::VectorXd weighted(nodes);

  std::exception_ptr failure;
  std::once_flag once;
#pragma omp parallel
  {
    std::vector<double> coords;
#pragma omp for schedule(static)
    for (long k = 0; k < nodes; ++k) {
      try {
        grid.node(static_cast<std::size_t>(k), coords);
        const double v = target(coords);
        check_finite(target, v);
        weighted[k] = grid.weight(static_cast<std::size_t>(k)) * v;
      } catch (...) {
        std::call_once(once, [&] { failure = std::current_exception(); });
        weighted[k] = 0.0;
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return -(phi * weighted);
}

Eigen::MatrixXd assemble_H_factored(int n_states, int arity, const QuadratureGrid& grid) {
  table_size(n_states, arity);
  const Eigen::MatrixXd axis = axis_basis(n_states, grid.rule());
  const auto& w = grid.rule().weights;
  Eigen::MatrixXd g1 = Eigen::MatrixXd::Zero(n_states, n_states);
  for (Eigen::Index r = 0; r < axis.rows(); ++r) {
    g1 += w[r] * axis.row(r).transpose() * axis.row(r);
  }
  // Codeword digit 1 is least significant, so later chains are the outer factor.
  Eigen::MatrixXd h = g1;
  for (int d = 1; d < arity; ++d) {
    Eigen::MatrixXd next(h.rows() * n_states, h.cols() * n_states);
    for (int a = 0; a < n_states; ++a) {
      for (int b = 0; b < n_states; ++b) {
        next.block(a * h.rows(), b * h.cols(), h.rows(), h.cols()) = g1(a, b) * h;
      }
    }
    h = std::move(next);
  }
  return h;
}

namespace reference {

Eigen::MatrixXd assemble_H(int n_states, int arity, const QuadratureGrid& grid) {
  const std::size_t size = table_size(n_states, arity);
  if (grid.dims() != arity) throw ConfigError("quadrature grid dimension does not match arity");
  const Eigen::MatrixXd axis = axis_basis(n_states, grid.rule());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size),
                                            static_cast<Eigen::Index>(size));
  std::vector<double> col(size);
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    basis_column(grid, axis, k, col);
    const double w = grid.weight(k);
    for (std::size_t u = 0; u < size; ++u) {
      const double wu = w * col[u];
      for (std::size_t v = 0; v < size; ++v) h(u, v) += wu * col[v];
    }
  }
  return h;
}

Eigen::VectorXd assemble_c(const TargetFunction& target, int n_states, int arity,
                           const QuadratureGrid& grid) {
  const std::size_t size = table_size(n_states, arity);
  if (target.arity != arity || grid.dims() != arity) {
    throw ConfigError("arity mismatch in assemble_c");
  }
  const Eigen::MatrixXd axis = axis_basis(n_states, grid.rule());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
  std::vector<double> col(size), coords;
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    basis_column(grid, axis, k, col);
    grid.node(k, coords);
    const double v = target(coords);
    check_finite(target, v);
    const double wv = grid.weight(k) * v;
    for (std::size_t u = 0; u < size; ++u) c[u] -= wv * col[u];
  }
  return c;
}

}  // namespace reference
}  // namespace smurf
