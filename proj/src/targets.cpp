#include "smurf/targets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "smurf/errors.hpp"
#include "smurf/expression.hpp"

namespace smurf {
namespace {

double softmax_first(std::span<const double> p) {
  double denom = 0.0;
  for (double v : p) denom += std::exp(v);
  return std::exp(p[0]) / denom;
}

double cas(double x) { return std::sin(x) + std::cos(x); }

double swish(double x) { return x / (1.0 + std::exp(-x)); }

/// Visits every point of a uniform grid with `per_axis` points on each axis.
template <typename F>
void for_each_grid_point(const std::vector<AffineMap>& boxes, int per_axis, F&& visit) {
  const std::size_t m = boxes.size();
  std::size_t total = 1;
  for (std::size_t j = 0; j < m; ++j) total *= static_cast<std::size_t>(per_axis);
  std::vector<double> x(m);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t r = k;
    for (std::size_t j = 0; j < m; ++j) {
      const double u = static_cast<double>(r % per_axis) / (per_axis - 1);
      r /= static_cast<std::size_t>(per_axis);
      x[j] = boxes[j].backward(Probability::from_unchecked(u));
    }
    visit(std::span<const double>(x));
  }
}

int sample_points_per_axis(std::size_t arity) {
  if (arity <= 3) return 129;
  if (arity == 4) return 33;
  return 9;
}

}  // namespace

std::vector<AffineMap> TargetFunction::input_maps() const {
  if (raw) return raw->input_maps;
  return std::vector<AffineMap>(static_cast<std::size_t>(arity), AffineMap{});
}

AffineMap TargetFunction::output_map() const { return raw ? raw->output_map : AffineMap{}; }

TargetFunction normalize_target(std::string name, RealFunction raw,
                                std::vector<AffineMap> input_boxes, OutputBox output) {
  if (input_boxes.empty()) throw ConfigError("target needs at least one input box");
  const int per_axis = sample_points_per_axis(input_boxes.size());

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for_each_grid_point(input_boxes, per_axis, [&](std::span<const double> x) {
    const double y = raw(x);
    if (!std::isfinite(y)) {
      throw ConfigError("target '" + name + "' is not finite at a sample point");
    }
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  });

  AffineMap out_map;
  if (output.box) {
    out_map = *output.box;
    if (lo < out_map.lo() || hi > out_map.hi()) {
      throw ConfigError("target '" + name + "' leaves its output box [" +
                        std::to_string(out_map.lo()) + ", " + std::to_string(out_map.hi()) +
                        "]: sampled range [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
  } else {
    constexpr double kPad = 1e-9;
    out_map = AffineMap(lo - kPad, hi + kPad);
  }

  TargetFunction t;
  t.name = std::move(name);
  t.arity = static_cast<int>(input_boxes.size());
  t.raw = TargetFunction::Raw{raw, input_boxes, out_map};
  t.normalized = [raw, input_boxes, out_map](std::span<const double> p) {
    thread_local std::vector<double> x;
    x.resize(input_boxes.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = input_boxes[j].backward(Probability::from_unchecked(p[j]));
    }
    return out_map.forward_unchecked(raw(x));
  };
  return t;
}

namespace {

TargetFunction literal(std::string name, int arity, RealFunction fn) {
  TargetFunction t;
  t.name = std::move(name);
  t.arity = arity;
  t.normalized = std::move(fn);
  return t;
}

TargetFunction activation(std::string name, double (*fn)(double), AffineMap default_box,
                          const BuiltinOptions& options) {
  const AffineMap in = options.input_box.value_or(default_box);
  RealFunction raw = [fn](std::span<const double> x) { return fn(x[0]); };
  OutputBox out = options.output_box ? OutputBox::explicit_box(*options.output_box)
                                     : OutputBox::automatic();
  return normalize_target(std::move(name), std::move(raw), {in}, out);
}

double euclidean(std::span<const double> p) { return std::hypot(p[0], p[1]); }

}  // namespace

std::vector<std::string> builtin_names() {
  return {"euclidean2", "euclidean2_scaled", "euclidean2_raw", "ht_kernel",
          "softmax2_c1", "softmax3_c1",      "tanh_act",       "swish_act"};
}

bool is_builtin(std::string_view name) {
  const auto names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

TargetFunction builtin(std::string_view name, const BuiltinOptions& options) {
  if (name == "euclidean2" || name == "euclidean2_scaled") {
    // Output range [0, sqrt 2] normalized onto [0, 1].
    return normalize_target(std::string(name), euclidean, {AffineMap(0, 1), AffineMap(0, 1)},
                            OutputBox::explicit_box(AffineMap(0.0, std::numbers::sqrt2)));
  }
  if (name == "euclidean2_raw") return literal("euclidean2_raw", 2, euclidean);
  if (name == "ht_kernel") {
    return literal("ht_kernel", 2,
                   [](std::span<const double> p) { return std::sin(p[0]) * cas(p[1]); });
  }
  if (name == "softmax2_c1") return literal("softmax2_c1", 2, softmax_first);
  if (name == "softmax3_c1") return literal("softmax3_c1", 3, softmax_first);
  if (name == "tanh_act") {
    return activation("tanh_act", [](double x) { return std::tanh(x); }, AffineMap(-4, 4),
                      options);
  }
  if (name == "swish_act") return activation("swish_act", swish, AffineMap(-4, 6), options);
  throw ConfigError("unknown target '" + std::string(name) + "'");
}

TargetFunction target_from_expression(std::string_view text, int arity,
                                      std::vector<AffineMap> input_boxes,
                                      std::optional<AffineMap> output_box, std::string name) {
  const Expression expr = Expression::parse(text);
  if (arity < 1) throw ConfigError("arity must be at least 1");
  if (expr.max_variable() > arity) {
    throw ConfigError("expression uses x" + std::to_string(expr.max_variable()) +
                      " but the arity is " + std::to_string(arity));
  }
  if (name.empty()) name = "expr";
  RealFunction fn = [expr](std::span<const double> x) { return expr.evaluate(x); };

  TargetFunction t;
  if (input_boxes.empty()) {
    if (output_box) {
      input_boxes.assign(static_cast<std::size_t>(arity), AffineMap{});
    } else {
      t = literal(std::move(name), arity, std::move(fn));
    }
  }
  if (!input_boxes.empty()) {
    if (input_boxes.size() != static_cast<std::size_t>(arity)) {
      throw ConfigError("expected " + std::to_string(arity) + " input boxes, got " +
                        std::to_string(input_boxes.size()));
    }
    t = normalize_target(std::move(name), std::move(fn), std::move(input_boxes),
                         output_box ? OutputBox::explicit_box(*output_box)
                                    : OutputBox::automatic());
  }
  t.expression = expr.to_string();
  return t;
}

}  // namespace smurf
