#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "smurf/chain_fsm.hpp"
#include "smurf/probability.hpp"
#include "smurf/rng.hpp"
#include "smurf/weight_table.hpp"

namespace smurf {

struct MachineOptions {
  RngKind rng = RngKind::independent;
  std::uint64_t seed = 0;
  long burn_in = 0;       // unrecorded cycles before smurf_run starts counting
  int initial_state = 0;  // reset state of every chain
};

/// Cycle-accurate SMURF generator: M saturating chains driven by input
/// θ-gates, whose concatenated states select one of N^M output θ-gates.
///
/// Gate streams: in independent mode input gate j uses sub-seed stream j and
/// output gate t uses stream M + t of the master seed. Output gates are only
/// drawn from when selected, which is statistically identical because the
/// streams are independent. In shared-lagged mode one master generator
/// advances once per cycle and gate k (input gates first) taps it with lag k.
class SmurfMachine {
 public:
  explicit SmurfMachine(const WeightTable& table, MachineOptions options = {});
  /// Mixed-radix machine; chain j has radices[j] states.
  SmurfMachine(std::vector<int> radices, std::vector<double> weights,
               MachineOptions options = {});

  std::size_t arity() const noexcept { return chains_.size(); }
  std::size_t gate_count() const noexcept { return weights_.size(); }
  const std::vector<ChainFsm>& chains() const noexcept { return chains_; }
  const MachineOptions& options() const noexcept { return options_; }

  /// Current flat codeword (digit of chain 1 least significant).
  std::size_t codeword() const noexcept;

  /// Chains back to the initial state.
  void reset();
  /// Re-creates every gate's random source from `seed`.
  void reseed(std::uint64_t seed);

  /// One clock: sample M input bits at thresholds `pxs`, step every chain,
  /// then emit the bit of the output θ-gate selected by the new codeword.
  std::uint8_t step(std::span<const double> pxs);

 private:
  double input_draw(std::size_t j);
  double output_draw(std::size_t t);

  std::vector<int> radices_;
  std::vector<double> weights_;
  MachineOptions options_;
  std::vector<ChainFsm> chains_;
  std::vector<RngSource> input_sources_;
  std::vector<RngSource> output_sources_;
  std::optional<LaggedBus> bus_;
};

/// Resets chains, reseeds, runs `burn_in` unrecorded cycles then `length`
/// recorded ones; returns the fraction of ones. Throws on length == 0.
double smurf_run(SmurfMachine& machine, std::span<const double> pxs, long length,
                 std::uint64_t seed);

/// Infinite-bitstream output: sum_t P_s(t) w_t.
Probability smurf_expected_output(const WeightTable& table, std::span<const double> pxs);
double smurf_expected_output(std::span<const int> radices, std::span<const double> weights,
                             std::span<const double> pxs);

}  // namespace smurf
