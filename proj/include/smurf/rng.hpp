#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace smurf {

enum class RngKind { independent, shared_lagged, low_discrepancy };

RngKind parse_rng_kind(std::string_view text);
std::string_view to_string(RngKind kind);

/// SplitMix64 finalizer. Used to derive well-separated sub-seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Sub-seed for stream `stream` of `master`. Deterministic and order-free, so
/// parallel workers can derive their own seeds.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return splitmix64(master ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b) noexcept {
  return derive_seed(derive_seed(master, a), b);
}

/// Maps the top 53 bits of a 64-bit word onto [0, 1).
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// A uniform random source on [0, 1).
///
/// * independent: std::mt19937_64 seeded with the given 64-bit seed.
/// * shared_lagged: the master sequence of `seed` delayed by `lag` draws, i.e.
///   draw k equals master draw k - lag. Draws before time zero come from a
///   fixed pre-history stream derived from the seed, identical for every lag,
///   so two sources with different lags agree wherever they overlap.
/// * low_discrepancy: base-2 van der Corput (first Sobol dimension) with a
///   seeded random digital shift.
class RngSource {
 public:
  static RngSource independent(std::uint64_t seed);
  static RngSource lagged(std::uint64_t master_seed, std::uint32_t lag);
  static RngSource low_discrepancy(std::uint64_t seed);
  static RngSource make(RngKind kind, std::uint64_t seed, std::uint32_t lag = 0);

  double next();

  RngKind kind() const noexcept { return kind_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint32_t lag() const noexcept { return lag_; }

 private:
  RngSource(RngKind kind, std::uint64_t seed, std::uint32_t lag);

  RngKind kind_;
  std::uint64_t seed_;
  std::uint32_t lag_;
  std::mt19937_64 engine_;
  std::vector<double> delay_;  // ring buffer of the last `lag_` master draws
  std::size_t head_ = 0;
  std::uint64_t index_ = 0;    // low-discrepancy sequence position
  std::uint64_t shift_ = 0;    // low-discrepancy digital shift
};

/// Value of the shared-lagged pre-history at time -(j + 1), j >= 0.
/// Exposed so the machine's shared bus and RngSource stay consistent.
class LaggedPrehistory {
 public:
  explicit LaggedPrehistory(std::uint64_t master_seed);
  /// Returns the first `count` pre-history draws (times -1, -2, ...).
  std::vector<double> take(std::size_t count);

 private:
  std::mt19937_64 engine_;
};

/// One master generator fanned out to many taps with different delays.
/// A tap with lag d sees exactly what RngSource::lagged(seed, d) would.
class LaggedBus {
 public:
  LaggedBus(std::uint64_t master_seed, std::uint32_t max_lag);

  /// Advances the master generator by one draw (one clock cycle).
  void advance();
  /// Draw seen this cycle by a tap with the given lag. Requires advance() to
  /// have been called at least once.
  double tap(std::uint32_t lag) const;

  std::uint32_t max_lag() const noexcept { return max_lag_; }

 private:
  std::mt19937_64 engine_;
  std::uint32_t max_lag_;
  std::vector<double> history_;  // ring, history_[pos_] is the newest draw
  std::size_t pos_ = 0;
};

}  // namespace smurf
