#pragma once

#include "smurf/probability.hpp"

namespace smurf {

/// Bijective linear map between a real interval [lo, hi] and [0, 1].
class AffineMap {
 public:
  AffineMap() = default;
  AffineMap(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  bool is_identity() const noexcept { return lo_ == 0.0 && hi_ == 1.0; }

  /// Rejects x outside [lo, hi]; no clamping.
  Probability forward(double x) const;
  double backward(Probability p) const noexcept { return lo_ + p.value() * (hi_ - lo_); }

  /// Unchecked forward map. The result may lie outside [0, 1].
  double forward_unchecked(double x) const noexcept { return (x - lo_) / (hi_ - lo_); }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 1.0;
};

inline Probability map_to_unit(double x, const AffineMap& m) { return m.forward(x); }
inline double map_from_unit(Probability p, const AffineMap& m) { return m.backward(p); }

}  // namespace smurf
