#include "smurf/coefficient_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smurf/errors.hpp"

namespace smurf {
namespace {

using nlohmann::ordered_json;

ordered_json map_to_json(const AffineMap& m) { return {{"lo", m.lo()}, {"hi", m.hi()}}; }

AffineMap map_from_json(const ordered_json& j) {
  return AffineMap(j.at("lo").get<double>(), j.at("hi").get<double>());
}

}  // namespace

std::string coefficients_to_json(const WeightTable& table) {
  const TableMetadata& md = table.metadata;
  ordered_json j;
  j["format_version"] = kCoefficientFormatVersion;
  j["target_name"] = md.target_name;
  if (md.expression) j["expression"] = *md.expression;
  j["N"] = table.n_states();
  j["M"] = table.arity();
  j["codeword_order"] = kCodewordOrder;
  j["weights"] = std::vector<double>(table.weights().begin(), table.weights().end());
  ordered_json maps = ordered_json::array();
  for (const auto& m : md.input_maps) maps.push_back(map_to_json(m));
  j["input_maps"] = std::move(maps);
  j["output_map"] = map_to_json(md.output_map);
  j["grid_resolution"] = md.grid_resolution;
  j["solver"] = {{"iterations", md.solver.iterations},
                 {"phi", md.solver.phi},
                 {"residual", md.solver.residual},
                 {"regularization", md.solver.regularization}};
  j["master_seed"] = md.master_seed;
  return j.dump(2) + "\n";
}

WeightTable coefficients_from_json(std::string_view text) {
  try {
    const ordered_json j = ordered_json::parse(text);
    const int version = j.at("format_version").get<int>();
    if (version != kCoefficientFormatVersion) {
      throw IoError("unsupported coefficient file version " + std::to_string(version) +
                    " (expected " + std::to_string(kCoefficientFormatVersion) + ")");
    }
    if (j.at("codeword_order").get<std::string>() != kCodewordOrder) {
      throw IoError("unsupported codeword_order '" + j.at("codeword_order").get<std::string>() +
                    "'");
    }
    WeightTable table(j.at("N").get<int>(), j.at("M").get<int>(),
                      j.at("weights").get<std::vector<double>>());
    TableMetadata& md = table.metadata;
    md.target_name = j.at("target_name").get<std::string>();
    if (j.contains("expression") && !j["expression"].is_null()) {
      md.expression = j["expression"].get<std::string>();
    }
    md.input_maps.clear();
    for (const auto& m : j.at("input_maps")) md.input_maps.push_back(map_from_json(m));
    if (md.input_maps.size() != static_cast<std::size_t>(table.arity())) {
      throw IoError("input_maps must have one entry per input variable");
    }
    md.output_map = map_from_json(j.at("output_map"));
    md.grid_resolution = j.at("grid_resolution").get<int>();
    const auto& s = j.at("solver");
    md.solver.iterations = s.at("iterations").get<long>();
    md.solver.phi = s.at("phi").get<double>();
    md.solver.residual = s.at("residual").get<double>();
    md.solver.regularization = s.value("regularization", 0.0);
    md.master_seed = j.at("master_seed").get<std::uint64_t>();
    return table;
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("invalid coefficient file: ") + e.what());
  }
}

void write_coefficients(const WeightTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << coefficients_to_json(table);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

WeightTable read_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return coefficients_from_json(buf.str());
}

}  // namespace smurf
