#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smurf/affine_map.hpp"

namespace smurf {

using RealFunction = std::function<double(std::span<const double>)>;

/// A target T on [0, 1]^M in normalized units, optionally backed by a raw
/// function on a real box with affine input and output maps. Evaluators are
/// pure and may be called concurrently.
struct TargetFunction {
  struct Raw {
    RealFunction fn;
    std::vector<AffineMap> input_maps;
    AffineMap output_map;
  };

  std::string name;
  int arity = 0;
  RealFunction normalized;
  std::optional<Raw> raw;
  std::optional<std::string> expression;

  double operator()(std::span<const double> p) const { return normalized(p); }

  /// Input maps, identity when there is no raw form.
  std::vector<AffineMap> input_maps() const;
  AffineMap output_map() const;
};

/// Output-box choice for normalize_target.
struct OutputBox {
  static OutputBox automatic() { return OutputBox{}; }
  static OutputBox explicit_box(AffineMap m) { return OutputBox{m}; }
  std::optional<AffineMap> box;
};

/// Wraps `raw` so that normalized(P) = out.forward(raw(in.backward(P))).
/// The automatic output box is [min, max] of raw over a 129^M sample grid
/// (fewer points per axis beyond M = 3), padded by 1e-9. Throws ConfigError
/// when raw is non-finite on the grid or leaves an explicit output box.
TargetFunction normalize_target(std::string name, RealFunction raw,
                                std::vector<AffineMap> input_boxes, OutputBox output);

/// Options for the activation builtins; unset fields use the defaults
/// (tanh on [-4, 4], swish on [-4, 6], automatic output box).
struct BuiltinOptions {
  std::optional<AffineMap> input_box;
  std::optional<AffineMap> output_box;
};

/// Known names: euclidean2, euclidean2_scaled (alias), euclidean2_raw,
/// ht_kernel, softmax2_c1, softmax3_c1, tanh_act, swish_act.
TargetFunction builtin(std::string_view name, const BuiltinOptions& options = {});
std::vector<std::string> builtin_names();
bool is_builtin(std::string_view name);

/// Target from expression text. Without input boxes the expression is taken
/// literally on [0, 1]^M; with them it is a raw function normalized by
/// normalize_target (automatic output box unless one is given).
TargetFunction target_from_expression(std::string_view text, int arity,
                                      std::vector<AffineMap> input_boxes = {},
                                      std::optional<AffineMap> output_box = std::nullopt,
                                      std::string name = {});

}  // namespace smurf
