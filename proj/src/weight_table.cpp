#include "smurf/weight_table.hpp"

#include <string>

#include "smurf/codeword.hpp"
#include "smurf/errors.hpp"

namespace smurf {
namespace {

void check_weight(std::size_t t, double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw ConfigError("weight w_" + std::to_string(t) + " = " + std::to_string(w) +
                      " is not a probability");
  }
}

}  // namespace

WeightTable::WeightTable(int n_states, int arity, std::vector<double> weights)
    : n_(n_states), m_(arity), weights_(std::move(weights)) {
  const std::size_t expected = table_size(n_states, arity);
  if (weights_.size() != expected) {
    throw ConfigError("weight table for N=" + std::to_string(n_states) +
                      ", M=" + std::to_string(arity) + " needs " + std::to_string(expected) +
                      " entries, got " + std::to_string(weights_.size()));
  }
  for (std::size_t t = 0; t < weights_.size(); ++t) check_weight(t, weights_[t]);
  metadata.input_maps.assign(static_cast<std::size_t>(arity), AffineMap{});
}

WeightTable WeightTable::constant(int n_states, int arity, double value) {
  return WeightTable(n_states, arity, std::vector<double>(table_size(n_states, arity), value));
}

void WeightTable::set_weight(std::size_t t, double value) {
  check_weight(t, value);
  weights_.at(t) = value;
}

}  // namespace smurf
