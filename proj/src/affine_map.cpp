#include "smurf/affine_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace smurf {

AffineMap::AffineMap(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ConfigError("affine map needs finite lo < hi, got [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
}

Probability AffineMap::forward(double x) const {
  if (!(x >= lo_ && x <= hi_)) {
    throw ConfigError("value " + std::to_string(x) + " outside [" + std::to_string(lo_) + ", " +
                      std::to_string(hi_) + "]");
  }
  // Endpoints map exactly; interior rounding can only be guarded by clamping.
  const double p = (x - lo_) / (hi_ - lo_);
  return Probability(std::clamp(p, 0.0, 1.0));
}

}  // namespace smurf
