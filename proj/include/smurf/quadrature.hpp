#pragma once

#include <cstddef>
#include <vector>

namespace smurf {

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to 1.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// R-point rule, exact for polynomials up to degree 2R - 1. Throws for R < 1.
GaussLegendre gauss_legendre_unit(int points);

/// Tensor-product rule on [0, 1]^M with the same 1-D rule in each dimension.
/// Flat node index k enumerates dimension 0 fastest.
class QuadratureGrid {
 public:
  QuadratureGrid(int dims, int resolution);

  int dims() const noexcept { return dims_; }
  int resolution() const noexcept { return resolution_; }
  const GaussLegendre& rule() const noexcept { return rule_; }
  std::size_t node_count() const noexcept { return count_; }

  /// Coordinates of node k (length dims()) and its tensor weight.
  void node(std::size_t k, std::vector<double>& coords) const;
  double weight(std::size_t k) const;
  /// 1-D rule index of node k along dimension d.
  std::size_t axis_index(std::size_t k, int d) const;

 private:
  int dims_;
  int resolution_;
  GaussLegendre rule_;
  std::size_t count_;
};

/// Default resolution: 33 points per dimension for M <= 2, 17 beyond.
int default_grid_resolution(int arity);

}  // namespace smurf
