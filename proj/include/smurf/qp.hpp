#pragma once

#include <vector>

#include <Eigen/Dense>

namespace smurf {

struct QpOptions {
  double update_tol = 1e-10;      // stop when max |b_new - b| falls below
  long max_iterations = 200'000;  // projected-gradient iteration cap
  double kkt_tol = 1e-8;          // required max |projected gradient|
  double negative_eig_tol = 1e-8; // H eigenvalues below -tol are rejected
  int pg_phase = 25;              // PG iterations between active-set passes
  bool record_history = false;    // keep phi after every accepted iterate
};

struct QpResult {
  Eigen::VectorXd x;
  long iterations = 0;
  double phi = 0.0;       // x^T H x + 2 c^T x with the unregularized H
  double residual = 0.0;  // max |projected gradient| of the regularized objective
  bool interior = false;  // the unconstrained minimizer was already feasible
  std::vector<double> phi_history;  // regularized objective per accepted iterate
};

/// phi(x) = x^T H x + 2 c^T x.
double qp_objective(const Eigen::MatrixXd& h, const Eigen::VectorXd& c, const Eigen::VectorXd& x);

/// Projected gradient of phi on the box [0, 1]^n: components pointing out of
/// the box at an active bound are zeroed.
Eigen::VectorXd projected_gradient(const Eigen::MatrixXd& h, const Eigen::VectorXd& c,
                                   const Eigen::VectorXd& x);

/// Minimizes phi over 0 <= x <= 1 with H + regularization * I.
///
/// Tries the unconstrained solution first. Otherwise alternates `pg_phase`
/// projected-gradient steps (step 1 / (2 lambda_max)) with a primal
/// active-set pass started from the PG iterate; the active-set pass
/// terminates in finitely many face solves and handles the ill-conditioned H
/// of larger N where PG alone stalls. Neither phase increases phi. Throws
/// SolverError when H has an eigenvalue below -negative_eig_tol or the KKT
/// residual is still above kkt_tol after max_iterations PG steps.
QpResult solve_box_qp(const Eigen::MatrixXd& h, const Eigen::VectorXd& c, double regularization,
                      const QpOptions& options = {});

}  // namespace smurf
