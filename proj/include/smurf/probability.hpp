#pragma once

#include <string>

#include "smurf/errors.hpp"

namespace smurf {

/// A real number in [0, 1]. Construction outside the interval throws.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ConfigError("probability out of [0,1]: " + std::to_string(value));
    }
  }

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }
  constexpr Probability complement() const noexcept { return from_unchecked(1.0 - value_); }

  static constexpr Probability from_unchecked(double v) noexcept {
    Probability p;
    p.value_ = v;
    return p;
  }

 private:
  double value_ = 0.0;
};

}  // namespace smurf
