#include "smurf/rng.hpp"

#include <string>

#include "smurf/errors.hpp"

namespace smurf {
namespace {

constexpr std::uint64_t kPrehistoryStream = 0x70726568u;  // "preh"

}  // namespace

RngKind parse_rng_kind(std::string_view text) {
  if (text == "independent") return RngKind::independent;
  if (text == "lagged" || text == "shared-lagged") return RngKind::shared_lagged;
  if (text == "lowdisc" || text == "low-discrepancy") return RngKind::low_discrepancy;
  throw ConfigError("unknown rng kind '" + std::string(text) +
                    "' (expected independent, lagged or lowdisc)");
}

std::string_view to_string(RngKind kind) {
  switch (kind) {
    case RngKind::independent: return "independent";
    case RngKind::shared_lagged: return "lagged";
    case RngKind::low_discrepancy: return "lowdisc";
  }
  return "?";
}

RngSource::RngSource(RngKind kind, std::uint64_t seed, std::uint32_t lag)
    : kind_(kind), seed_(seed), lag_(lag), engine_(seed) {}

RngSource RngSource::independent(std::uint64_t seed) {
  return RngSource(RngKind::independent, seed, 0);
}

RngSource RngSource::lagged(std::uint64_t master_seed, std::uint32_t lag) {
  RngSource s(RngKind::shared_lagged, master_seed, lag);
  if (lag > 0) {
    // Output k < lag is master draw k - lag, i.e. pre-history index lag - 1 - k.
    auto pre = LaggedPrehistory(master_seed).take(lag);
    s.delay_.resize(lag);
    for (std::uint32_t k = 0; k < lag; ++k) s.delay_[k] = pre[lag - 1 - k];
  }
  return s;
}

RngSource RngSource::low_discrepancy(std::uint64_t seed) {
  RngSource s(RngKind::low_discrepancy, seed, 0);
  s.shift_ = splitmix64(seed);
  return s;
}

RngSource RngSource::make(RngKind kind, std::uint64_t seed, std::uint32_t lag) {
  switch (kind) {
    case RngKind::independent: return independent(seed);
    case RngKind::shared_lagged: return lagged(seed, lag);
    case RngKind::low_discrepancy: return low_discrepancy(seed);
  }
  throw ConfigError("invalid rng kind");
}

double RngSource::next() {
  switch (kind_) {
    case RngKind::independent:
      return to_unit_interval(engine_());
    case RngKind::shared_lagged: {
      const double fresh = to_unit_interval(engine_());
      if (lag_ == 0) return fresh;
      const double out = delay_[head_];
      delay_[head_] = fresh;
      head_ = head_ + 1 == delay_.size() ? 0 : head_ + 1;
      return out;
    }
    case RngKind::low_discrepancy: {
      const std::uint64_t n = index_++;
      std::uint64_t r = 0;
      for (int b = 0; b < 64; ++b) r |= ((n >> b) & 1u) << (63 - b);
      return to_unit_interval(r ^ shift_);
    }
  }
  return 0.0;
}

LaggedPrehistory::LaggedPrehistory(std::uint64_t master_seed)
    : engine_(derive_seed(master_seed, kPrehistoryStream)) {}

std::vector<double> LaggedPrehistory::take(std::size_t count) {
  std::vector<double> out(count);
  for (auto& v : out) v = to_unit_interval(engine_());
  return out;
}

LaggedBus::LaggedBus(std::uint64_t master_seed, std::uint32_t max_lag)
    : engine_(master_seed), max_lag_(max_lag), history_(std::size_t{max_lag} + 1) {
  // Slot pos_ holds time 0 after the first advance(); slots behind it hold
  // pre-history times -1, -2, ... in ring order.
  auto pre = LaggedPrehistory(master_seed).take(max_lag);
  const std::size_t n = history_.size();
  pos_ = n - 1;  // first advance() moves to slot 0
  for (std::size_t j = 0; j < pre.size(); ++j) history_[n - 1 - j] = pre[j];
}

void LaggedBus::advance() {
  pos_ = pos_ + 1 == history_.size() ? 0 : pos_ + 1;
  history_[pos_] = to_unit_interval(engine_());
}

double LaggedBus::tap(std::uint32_t lag) const {
  if (lag > max_lag_) throw ConfigError("lag exceeds bus depth");
  const std::size_t n = history_.size();
  return history_[(pos_ + n - lag) % n];
}

}  // namespace smurf
