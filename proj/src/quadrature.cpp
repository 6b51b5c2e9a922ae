#include "smurf/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "smurf/errors.hpp"

namespace smurf {

GaussLegendre gauss_legendre_unit(int points) {
  if (points < 1) throw ConfigError("quadrature needs at least one node");
  const int n = points;
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from the Tricomi initial guess; roots are
  // symmetric so only half are computed.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] -> [0, 1]; ascending node order.
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

QuadratureGrid::QuadratureGrid(int dims, int resolution)
    : dims_(dims), resolution_(resolution), rule_(gauss_legendre_unit(resolution)), count_(1) {
  if (dims < 1) throw ConfigError("quadrature grid needs at least one dimension");
  for (int d = 0; d < dims; ++d) count_ *= static_cast<std::size_t>(resolution);
}

std::size_t QuadratureGrid::axis_index(std::size_t k, int d) const {
  for (int j = 0; j < d; ++j) k /= static_cast<std::size_t>(resolution_);
  return k % static_cast<std::size_t>(resolution_);
}

void QuadratureGrid::node(std::size_t k, std::vector<double>& coords) const {
  coords.resize(static_cast<std::size_t>(dims_));
  for (int d = 0; d < dims_; ++d) {
    coords[d] = rule_.nodes[k % resolution_];
    k /= static_cast<std::size_t>(resolution_);
  }
}

double QuadratureGrid::weight(std::size_t k) const {
  double w = 1.0;
  for (int d = 0; d < dims_; ++d) {
    w *= rule_.weights[k % resolution_];
    k /= static_cast<std::size_t>(resolution_);
  }
  return w;
}

int default_grid_resolution(int arity) { return arity <= 2 ? 33 : 17; }

}  // namespace smurf
