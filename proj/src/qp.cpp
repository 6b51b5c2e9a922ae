#include "smurf/qp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "smurf/errors.hpp"

namespace smurf {
namespace {

constexpr double kBoundTol = 1e-14;

Eigen::VectorXd clamp_box(const Eigen::VectorXd& x) { return x.cwiseMax(0.0).cwiseMin(1.0); }

double min_eigenvalue(const Eigen::MatrixXd& h) {
  if (h.rows() <= 1024) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }
  // Large systems: inertia from the pivoted LDL^T (sign-exact, not magnitude-exact).
  Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
  return ldlt.vectorD().minCoeff();
}

double max_eigenvalue(const Eigen::MatrixXd& h) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(h.rows()) / std::sqrt(double(h.rows()));
  double lambda = 0.0;
  for (int it = 0; it < 1000; ++it) {
    Eigen::VectorXd w = h * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    const double next = v.dot(w);
    v = w / norm;
    if (std::abs(next - lambda) <= 1e-12 * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}


/// Primal active-set method on the box, started from a feasible x. Every
/// accepted move minimizes phi over the current face or stops at the first
/// blocking bound, so phi never increases. Returns true when no bound
/// multiplier has the wrong sign by more than release_tol.
template <typename Record>
bool active_set_refine(const Eigen::MatrixXd& h, const Eigen::VectorXd& c, Eigen::VectorXd& x,
                       double release_tol, Record&& record) {
  const Eigen::Index n = x.size();
  enum class Bound : unsigned char { free, lower, upper };
  std::vector<Bound> state(static_cast<std::size_t>(n), Bound::free);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x[i] <= kBoundTol) {
      x[i] = 0.0;
      state[i] = Bound::lower;
    } else if (x[i] >= 1.0 - kBoundTol) {
      x[i] = 1.0;
      state[i] = Bound::upper;
    }
  }

  const long cap = 10 * static_cast<long>(n) + 100;
  for (long it = 0; it < cap; ++it) {
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (state[i] == Bound::free) free.push_back(i);
    }
    const auto f = static_cast<Eigen::Index>(free.size());
    Eigen::VectorXd z(f);
    if (f > 0) {
      Eigen::MatrixXd hff(f, f);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(f);
      for (Eigen::Index a = 0; a < f; ++a) {
        rhs[a] = -c[free[a]];
        for (Eigen::Index j = 0; j < n; ++j) {
          if (state[j] != Bound::free) rhs[a] -= h(free[a], j) * x[j];
        }
        for (Eigen::Index b = 0; b < f; ++b) hff(a, b) = h(free[a], free[b]);
      }
      z = hff.ldlt().solve(rhs);
      if (!z.allFinite()) return false;
    }

    // Largest feasible fraction of the step toward the face minimizer.
    double alpha = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index a = 0; a < f; ++a) {
      const double xi = x[free[a]];
      const double d = z[a] - xi;
      if (z[a] < 0.0 && d < 0.0 && -xi / d < alpha) {
        alpha = -xi / d;
        blocking = a;
      } else if (z[a] > 1.0 && d > 0.0 && (1.0 - xi) / d < alpha) {
        alpha = (1.0 - xi) / d;
        blocking = a;
      }
    }
    for (Eigen::Index a = 0; a < f; ++a) {
      const double xi = x[free[a]];
      x[free[a]] = std::clamp(xi + alpha * (z[a] - xi), 0.0, 1.0);
    }
    if (blocking >= 0) {
      const Eigen::Index i = free[blocking];
      const bool to_lower = z[blocking] < 0.0;
      x[i] = to_lower ? 0.0 : 1.0;
      state[i] = to_lower ? Bound::lower : Bound::upper;
      record(x);
      continue;
    }
    record(x);

    // On the face minimizer: release the bound with the worst multiplier.
    const Eigen::VectorXd g = 2.0 * (h * x + c);
    Eigen::Index worst = -1;
    double worst_violation = release_tol;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = state[i] == Bound::lower   ? -g[i]
                       : state[i] == Bound::upper ? g[i]
                                                  : 0.0;
      if (v > worst_violation) {
        worst_violation = v;
        worst = i;
      }
    }
    if (worst < 0) return true;
    state[worst] = Bound::free;
  }
  return false;
}

}  // namespace

double qp_objective(const Eigen::MatrixXd& h, const Eigen::VectorXd& c, const Eigen::VectorXd& x) {
  return x.dot(h * x) + 2.0 * c.dot(x);
}

Eigen::VectorXd projected_gradient(const Eigen::MatrixXd& h, const Eigen::VectorXd& c,
                                   const Eigen::VectorXd& x) {
  Eigen::VectorXd g = 2.0 * (h * x + c);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] <= kBoundTol && g[i] > 0.0) g[i] = 0.0;
    if (x[i] >= 1.0 - kBoundTol && g[i] < 0.0) g[i] = 0.0;
  }
  return g;
}

QpResult solve_box_qp(const Eigen::MatrixXd& h, const Eigen::VectorXd& c, double regularization,
                      const QpOptions& options) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n || c.size() != n) throw SolverError("QP dimension mismatch");
  if (n == 0) return QpResult{};

  const double lambda_min = min_eigenvalue(h);
  if (lambda_min < -options.negative_eig_tol) {
    throw SolverError("H is not positive semidefinite (eigenvalue " +
                      std::to_string(lambda_min) + ")");
  }

  Eigen::MatrixXd hr = h;
  hr.diagonal().array() += regularization;

  QpResult result;
  auto record = [&](const Eigen::VectorXd& x) {
    if (options.record_history) result.phi_history.push_back(qp_objective(hr, c, x));
  };
  auto finish = [&](Eigen::VectorXd x) {
    result.x = std::move(x);
    result.phi = qp_objective(h, c, result.x);
    result.residual = projected_gradient(hr, c, result.x).cwiseAbs().maxCoeff();
    return result;
  };

  const Eigen::LDLT<Eigen::MatrixXd> full(hr);
  const Eigen::VectorXd unconstrained = full.solve(-c);
  if (unconstrained.minCoeff() >= -kBoundTol && unconstrained.maxCoeff() <= 1.0 + kBoundTol) {
    result.interior = true;
    Eigen::VectorXd x = clamp_box(unconstrained);
    record(x);
    return finish(std::move(x));
  }

  const double step = 1.0 / (2.0 * max_eigenvalue(hr));
  Eigen::VectorXd x = clamp_box(unconstrained);
  {
    const Eigen::VectorXd mid = Eigen::VectorXd::Constant(n, 0.5);
    if (qp_objective(hr, c, mid) < qp_objective(hr, c, x)) x = mid;
  }
  record(x);

  const double release_tol = 0.1 * options.kkt_tol;
  long budget = options.max_iterations;
  while (budget > 0) {
    // Projected-gradient phase: cheap progress and a guess of the active set.
    const long phase = std::min<long>(budget, std::max(options.pg_phase, 1));
    bool stalled = false;
    for (long k = 0; k < phase; ++k) {
      Eigen::VectorXd next = clamp_box(x - step * 2.0 * (hr * x + c));
      const double update = (next - x).cwiseAbs().maxCoeff();
      x = std::move(next);
      record(x);
      ++result.iterations;
      if (update < options.update_tol) {
        stalled = true;
        break;
      }
    }
    budget -= phase;

    // Active-set phase from the PG iterate.
    if (active_set_refine(hr, c, x, release_tol, record)) {
      if (projected_gradient(hr, c, x).cwiseAbs().maxCoeff() <= options.kkt_tol) {
        return finish(std::move(x));
      }
    }
    if (stalled && projected_gradient(hr, c, x).cwiseAbs().maxCoeff() <= options.kkt_tol) {
      return finish(std::move(x));
    }
  }

  QpResult partial = finish(std::move(x));
  if (partial.residual <= options.kkt_tol) return partial;
  throw SolverError("box QP did not converge: projected gradient " +
                    std::to_string(partial.residual) + " after " +
                    std::to_string(partial.iterations) + " iterations");
}

}  // namespace smurf
