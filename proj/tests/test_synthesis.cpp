#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "smurf/assembly.hpp"
#include "smurf/errors.hpp"
#include "smurf/machine.hpp"
#include "smurf/qp.hpp"
#include "smurf/quadrature.hpp"
#include "smurf/synthesis.hpp"
#include "smurf/targets.hpp"

using namespace smurf;

namespace {

TargetFunction lambda_target(int arity, RealFunction f, std::string name = "test") {
  TargetFunction t;
  t.name = std::move(name);
  t.arity = arity;
  t.normalized = std::move(f);
  return t;
}

}  // namespace

TEST(Quadrature, WeightsSumToOneAndNodesOrdered) {
  for (int r : {1, 2, 5, 17, 33}) {
    const auto gl = gauss_legendre_unit(r);
    double s = 0;
    for (double w : gl.weights) s += w;
    EXPECT_NEAR(s, 1.0, 1e-14);
    for (int i = 0; i + 1 < r; ++i) EXPECT_LT(gl.nodes[i], gl.nodes[i + 1]);
    EXPECT_GT(gl.nodes.front(), 0.0);
    EXPECT_LT(gl.nodes.back(), 1.0);
  }
  EXPECT_THROW(gauss_legendre_unit(0), ConfigError);
}

TEST(Quadrature, ExactForPolynomials) {
  for (int r : {3, 8, 17}) {
    const auto gl = gauss_legendre_unit(r);
    for (int deg = 0; deg <= 2 * r - 1; ++deg) {
      double s = 0;
      for (int i = 0; i < r; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], deg);
      EXPECT_NEAR(s, 1.0 / (deg + 1), 1e-14) << r << ' ' << deg;
    }
  }
}

TEST(Quadrature, TensorGrid) {
  const QuadratureGrid g(2, 5);
  EXPECT_EQ(g.node_count(), 25u);
  std::vector<double> x;
  double s = 0, sxy = 0;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    g.node(k, x);
    s += g.weight(k);
    sxy += g.weight(k) * x[0] * x[1] * x[1];
  }
  EXPECT_NEAR(s, 1.0, 1e-14);
  EXPECT_NEAR(sxy, 1.0 / 6, 1e-14);
  EXPECT_EQ(g.axis_index(7, 0), 2u);
  EXPECT_EQ(g.axis_index(7, 1), 1u);
  EXPECT_EQ(default_grid_resolution(2), 33);
  EXPECT_EQ(default_grid_resolution(3), 17);
}

TEST(Assembly, TwoStateGram) {
  const QuadratureGrid g(1, 33);
  const auto h = assemble_H(2, 1, g);
  EXPECT_NEAR(h(0, 0), 1.0 / 3, 1e-14);
  EXPECT_NEAR(h(0, 1), 1.0 / 6, 1e-14);
  EXPECT_NEAR(h(1, 0), 1.0 / 6, 1e-14);
  EXPECT_NEAR(h(1, 1), 1.0 / 3, 1e-14);
}

TEST(Assembly, TotalMassAndSymmetry) {
  for (auto [n, m] : {std::pair{4, 1}, std::pair{3, 2}, std::pair{2, 3}}) {
    const QuadratureGrid g(m, default_grid_resolution(m));
    const auto h = assemble_H(n, m, g);
    EXPECT_NEAR(h.sum(), 1.0, 1e-12);
    EXPECT_LT((h - h.transpose()).cwiseAbs().maxCoeff(), 1e-16);
    EXPECT_GT(h.minCoeff(), 0.0);
  }
}

TEST(Assembly, ParallelMatchesReferenceAndFactored) {
  const QuadratureGrid g(2, 17);
  const auto par = assemble_H(4, 2, g);
  const auto ref = reference::assemble_H(4, 2, g);
  const auto fac = assemble_H_factored(4, 2, g);
  EXPECT_LT((par - ref).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((fac - ref).cwiseAbs().maxCoeff(), 1e-14);

  const auto t = builtin("softmax2_c1");
  const auto cp = assemble_c(t, 4, 2, g);
  const auto cr = reference::assemble_c(t, 4, 2, g);
  EXPECT_LT((cp - cr).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Assembly, ConstantTargetLoad) {
  // c_t = -k * integral of P_t, and the integrals of all P_t sum to one.
  const QuadratureGrid g(2, 17);
  const auto c = assemble_c(lambda_target(2, [](auto) { return 0.4; }), 3, 2, g);
  EXPECT_NEAR(c.sum(), -0.4, 1e-13);
}

TEST(Assembly, NonFiniteTargetRejected) {
  const QuadratureGrid g(1, 9);
  const auto bad = lambda_target(1, [](std::span<const double> p) { return 1.0 / (p[0] - p[0]); });
  EXPECT_THROW(assemble_c(bad, 3, 1, g), ConfigError);
}

TEST(Qp, MatchesBruteForceGrid) {
  const QuadratureGrid g(1, 33);
  const auto h = assemble_H(2, 1, g);
  for (auto f : std::vector<RealFunction>{[](auto p) { return p[0] * p[0]; },
                                          [](auto p) { return 1.2 - p[0]; },
                                          [](auto p) { return std::sin(3 * p[0]); }}) {
    const auto c = assemble_c(lambda_target(1, f), 2, 1, g);
    const auto r = solve_box_qp(h, c, 0.0);
    double best = INFINITY;
    Eigen::Vector2d arg;
    for (int i = 0; i <= 1000; ++i) {
      for (int j = 0; j <= 1000; ++j) {
        const Eigen::Vector2d b(i / 1000.0, j / 1000.0);
        const double phi = qp_objective(h, c, b);
        if (phi < best) best = phi, arg = b;
      }
    }
    EXPECT_NEAR(r.x(0), arg(0), 0.002);
    EXPECT_NEAR(r.x(1), arg(1), 0.002);
    EXPECT_LE(r.phi, best + 1e-12);
  }
}

TEST(Qp, NoFeasiblePerturbationImproves) {
  const auto prob = build_problem(builtin("euclidean2"), 4, 2);
  const auto r = solve_box_qp(prob.h, prob.c, prob.regularization);
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd(0.0, 1e-3);
  for (int k = 0; k < 200; ++k) {
    Eigen::VectorXd y = r.x;
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = std::clamp(y(i) + nd(gen), 0.0, 1.0);
    EXPECT_GE(qp_objective(prob.h, prob.c, y), r.phi - 1e-12);
  }
  EXPECT_LE(r.residual, 1e-8);
}

TEST(Qp, ObjectiveNeverIncreases) {
  const auto prob = build_problem(builtin("ht_kernel"), 4, 2);
  QpOptions o;
  o.record_history = true;
  const auto r = solve_box_qp(prob.h, prob.c, prob.regularization, o);
  ASSERT_FALSE(r.interior);
  ASSERT_GE(r.phi_history.size(), 2u);
  for (std::size_t i = 1; i < r.phi_history.size(); ++i)
    EXPECT_LE(r.phi_history[i], r.phi_history[i - 1] + 1e-15);
}

TEST(Qp, RejectsIndefiniteMatrix) {
  Eigen::MatrixXd h(2, 2);
  h << 1, 0, 0, -1;
  EXPECT_THROW(solve_box_qp(h, Eigen::VectorXd::Zero(2), 0.0), SolverError);
}

TEST(Qp, ConvergesWithTinyBudgetButNotImpossibleTolerance) {
  const auto prob = build_problem(builtin("ht_kernel"), 6, 2);
  QpOptions o;
  o.max_iterations = 1;
  EXPECT_LE(solve_box_qp(prob.h, prob.c, prob.regularization, o).residual, 1e-8);
  o.kkt_tol = -1.0;
  o.max_iterations = 100;
  EXPECT_THROW(solve_box_qp(prob.h, prob.c, prob.regularization, o), SolverError);
}

TEST(Synthesis, ConstantTargetsAreExact) {
  for (double k : {0.0, 0.3, 1.0}) {
    for (auto [n, m] : {std::pair{4, 1}, std::pair{4, 2}, std::pair{3, 3}}) {
      const auto t = synthesize(lambda_target(m, [k](auto) { return k; }), n, m);
      for (double w : t.weights()) EXPECT_NEAR(w, k, 1e-6);
    }
  }
}

TEST(Synthesis, RecoversRepresentableSurface) {
  // A target that is itself a SMURF surface is reproduced exactly.
  const std::vector<int> radices{3, 3};
  const std::vector<double> truth{0.1, 0.5, 0.2, 0.9, 0.4, 0.6, 0.3, 0.8, 0.7};
  const auto target = lambda_target(2, [&](std::span<const double> p) {
    return smurf_expected_output(radices, truth, p);
  });
  const auto table = synthesize(target, 3, 2);
  for (std::size_t t = 0; t < truth.size(); ++t) EXPECT_NEAR(table.weight(t), truth[t], 1e-5);
}

TEST(Synthesis, SymmetricTargetGivesTransposeSymmetricTable) {
  const auto table = synthesize(builtin("softmax2_c1"), 4, 2);
  const auto e = synthesize(builtin("euclidean2"), 4, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(e.weight(i + 4 * j), e.weight(j + 4 * i), 1e-6);
  // softmax is antisymmetric about 1/2 under swapping its inputs.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      EXPECT_NEAR(table.weight(i + 4 * j) + table.weight(j + 4 * i), 1.0, 1e-6);
}

TEST(Synthesis, MetadataFilled) {
  const auto t = synthesize(builtin("tanh_act"), 6, 1);
  EXPECT_EQ(t.metadata.target_name, "tanh_act");
  EXPECT_EQ(t.metadata.grid_resolution, 33);
  EXPECT_EQ(t.metadata.input_maps.size(), 1u);
  EXPECT_EQ(t.metadata.input_maps[0], AffineMap(-4, 4));
  EXPECT_LE(t.metadata.solver.residual, 1e-8);
  EXPECT_THROW(synthesize(builtin("tanh_act"), 6, 2), ConfigError);
}
