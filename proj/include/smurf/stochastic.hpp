#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "smurf/probability.hpp"
#include "smurf/rng.hpp"

namespace smurf {

/// A unipolar stochastic number: its value is the fraction of ones.
class Bitstream {
 public:
  Bitstream() = default;
  explicit Bitstream(std::vector<std::uint8_t> bits);
  static Bitstream zeros(std::size_t length);
  static Bitstream ones(std::size_t length);

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::size_t count_ones() const noexcept;

  friend bool operator==(const Bitstream&, const Bitstream&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Comparator between a threshold and a uniform draw: emits 1 iff draw < threshold.
class ThetaGate {
 public:
  ThetaGate(Probability threshold, RngSource source)
      : threshold_(threshold), source_(std::move(source)) {}

  /// Consumes exactly one draw.
  std::uint8_t sample() { return source_.next() < threshold_.value() ? 1 : 0; }

  Probability threshold() const noexcept { return threshold_; }
  void set_threshold(Probability p) noexcept { threshold_ = p; }
  RngSource& source() noexcept { return source_; }

 private:
  Probability threshold_;
  RngSource source_;
};

inline std::uint8_t theta_sample(ThetaGate& gate) { return gate.sample(); }

/// L samples of a θ-gate (the SNG of a stochastic number). Throws on L == 0.
Bitstream generate_bitstream(Probability threshold, RngSource source, std::size_t length);

Probability bitstream_mean(const Bitstream& bs);

/// Bitwise AND; the mean of the result estimates P_x * P_y for independent inputs.
Bitstream sc_multiply(const Bitstream& x, const Bitstream& y);

/// Per-bit MUX selecting x where s is 1 and y otherwise. With P_s = 1/2 the
/// result estimates (P_x + P_y) / 2.
Bitstream sc_scaled_add(const Bitstream& x, const Bitstream& y, const Bitstream& s);

}  // namespace smurf
