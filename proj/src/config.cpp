#include "smurf/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smurf/codeword.hpp"
#include "smurf/errors.hpp"
#include "smurf/expression.hpp"

namespace smurf {
namespace {

using nlohmann::json;

AffineMap box_from_json(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError(std::string(field) + " must be a [lo, hi] pair");
  }
  return AffineMap(j[0].get<double>(), j[1].get<double>());
}

template <typename T>
std::vector<T> scalar_or_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

}  // namespace

void RunConfig::validate() const {
  if (target && expression) throw ConfigError("give either a target or an expression, not both");
  if (n_states.empty()) throw ConfigError("n_states: at least one state count is required");
  for (int n : n_states) {
    if (n < 2) throw ConfigError("n_states: N must be >= 2, got " + std::to_string(n));
  }
  if (arity < 0) throw ConfigError("arity: M must be >= 1");
  if (arity > 0) {
    for (int n : n_states) table_size(n, arity);
  }
  if (lengths.empty()) throw ConfigError("lengths: list must not be empty");
  for (long l : lengths) {
    if (l < 1) throw ConfigError("lengths: every bitstream length must be >= 1");
  }
  if (burn_in < 0) throw ConfigError("burn_in: must be >= 0");
  if (grid < 0) throw ConfigError("grid: quadrature resolution must be >= 1");
  if (eval_points < 0 || eval_points == 1) throw ConfigError("eval_points: must be >= 2");
  if (!input_boxes.empty() && arity > 0 && input_boxes.size() != static_cast<std::size_t>(arity)) {
    throw ConfigError("input_boxes: need one box per input variable");
  }
}

RunConfig config_from_json(std::string_view text) {
  RunConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    if (j.contains("target")) c.target = j["target"].get<std::string>();
    if (j.contains("expr")) c.expression = j["expr"].get<std::string>();
    if (j.contains("input_boxes")) {
      for (const auto& b : j["input_boxes"]) c.input_boxes.push_back(box_from_json(b, "input_boxes"));
    }
    if (j.contains("output_box")) c.output_box = box_from_json(j["output_box"], "output_box");
    if (j.contains("n_states")) c.n_states = scalar_or_list<int>(j["n_states"]);
    if (j.contains("arity")) c.arity = j["arity"].get<int>();
    if (j.contains("lengths")) c.lengths = scalar_or_list<long>(j["lengths"]);
    if (j.contains("burn_in")) c.burn_in = j["burn_in"].get<long>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("grid")) c.grid = j["grid"].get<int>();
    if (j.contains("eval_points")) c.eval_points = j["eval_points"].get<int>();
    if (j.contains("rng")) c.rng = parse_rng_kind(j["rng"].get<std::string>());
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("coeffs")) c.coeffs = scalar_or_list<std::string>(j["coeffs"]);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

TargetFunction resolve_target(const RunConfig& config) {
  if (config.expression) {
    int arity = config.arity;
    if (arity == 0) arity = std::max(1, Expression::parse(*config.expression).max_variable());
    return target_from_expression(*config.expression, arity, config.input_boxes,
                                  config.output_box);
  }
  if (!config.target) throw ConfigError("no target given (use --target or --expr)");
  BuiltinOptions opts;
  if (!config.input_boxes.empty()) opts.input_box = config.input_boxes.front();
  opts.output_box = config.output_box;
  TargetFunction t = builtin(*config.target, opts);
  if (config.arity > 0 && config.arity != t.arity) {
    throw ConfigError("target '" + t.name + "' has arity " + std::to_string(t.arity) +
                      ", not " + std::to_string(config.arity));
  }
  return t;
}

TargetFunction target_for_table(const WeightTable& table) {
  const TableMetadata& md = table.metadata;
  const bool identity_inputs =
      std::all_of(md.input_maps.begin(), md.input_maps.end(),
                  [](const AffineMap& m) { return m.is_identity(); });
  if (md.expression) {
    if (identity_inputs && md.output_map.is_identity()) {
      return target_from_expression(*md.expression, table.arity(), {}, std::nullopt,
                                    md.target_name);
    }
    return target_from_expression(*md.expression, table.arity(), md.input_maps, md.output_map,
                                  md.target_name);
  }
  if (!is_builtin(md.target_name)) {
    throw ConfigError("coefficient file names unknown target '" + md.target_name +
                      "' and carries no expression");
  }
  BuiltinOptions opts;
  if (md.target_name == "tanh_act" || md.target_name == "swish_act") {
    opts.input_box = md.input_maps.at(0);
    opts.output_box = md.output_map;
  }
  return builtin(md.target_name, opts);
}

}  // namespace smurf
