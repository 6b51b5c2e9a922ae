#include "smurf/stochastic.hpp"

#include <algorithm>

#include "smurf/errors.hpp"

namespace smurf {

Bitstream::Bitstream(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw ConfigError("bitstream entries must be 0 or 1");
  }
}

Bitstream Bitstream::zeros(std::size_t length) {
  return Bitstream(std::vector<std::uint8_t>(length, 0));
}

Bitstream Bitstream::ones(std::size_t length) {
  return Bitstream(std::vector<std::uint8_t>(length, 1));
}

std::size_t Bitstream::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Bitstream generate_bitstream(Probability threshold, RngSource source, std::size_t length) {
  if (length == 0) throw ConfigError("bitstream length must be at least 1");
  ThetaGate gate(threshold, std::move(source));
  std::vector<std::uint8_t> bits(length);
  for (auto& b : bits) b = gate.sample();
  return Bitstream(std::move(bits));
}

Probability bitstream_mean(const Bitstream& bs) {
  if (bs.size() == 0) throw ConfigError("mean of an empty bitstream");
  return Probability(static_cast<double>(bs.count_ones()) / static_cast<double>(bs.size()));
}

namespace {

void require_same_length(const Bitstream& a, const Bitstream& b) {
  if (a.size() != b.size()) {
    throw ConfigError("bitstream length mismatch: " + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()));
  }
}

}  // namespace

Bitstream sc_multiply(const Bitstream& x, const Bitstream& y) {
  require_same_length(x, y);
  std::vector<std::uint8_t> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] & y[i];
  return Bitstream(std::move(out));
}

Bitstream sc_scaled_add(const Bitstream& x, const Bitstream& y, const Bitstream& s) {
  require_same_length(x, y);
  require_same_length(x, s);
  std::vector<std::uint8_t> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s[i] ? x[i] : y[i];
  return Bitstream(std::move(out));
}

}  // namespace smurf
