#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "smurf/affine_map.hpp"
#include "smurf/rng.hpp"
#include "smurf/targets.hpp"
#include "smurf/weight_table.hpp"

namespace smurf {

/// Settings shared by the CLI commands. A JSON config file uses the same
/// names as the long flags with dashes replaced by underscores; flags given
/// on the command line override the file.
struct RunConfig {
  std::optional<std::string> target;      // builtin name
  std::optional<std::string> expression;  // alternative to target
  std::vector<AffineMap> input_boxes;     // raw input domain per variable
  std::optional<AffineMap> output_box;    // raw output range, automatic if unset
  std::vector<int> n_states{4};
  int arity = 0;  // 0: taken from the target
  std::vector<long> lengths{64};
  long burn_in = 0;
  std::uint64_t seed = 0;
  int grid = 0;         // quadrature resolution, 0 = default
  int eval_points = 0;  // evaluation grid per dimension, 0 = default
  RngKind rng = RngKind::independent;
  std::optional<std::string> out;
  std::vector<std::string> coeffs;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Reads a JSON config. Throws IoError if unreadable, ConfigError on bad fields.
RunConfig load_config(const std::filesystem::path& path);
RunConfig config_from_json(std::string_view text);

/// Builds the target named by `config` (builtin or expression). `arity`
/// overrides config.arity when positive.
TargetFunction resolve_target(const RunConfig& config);

/// Rebuilds the target recorded in a coefficient file's metadata.
TargetFunction target_for_table(const WeightTable& table);

}  // namespace smurf
