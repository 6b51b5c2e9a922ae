#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "smurf/weight_table.hpp"

namespace smurf {

inline constexpr int kCoefficientFormatVersion = 1;
inline constexpr std::string_view kCodewordOrder = "digit1-least-significant";

/// JSON text of a weight table. Doubles are written in shortest round-trip
/// form, so parse -> serialize reproduces the text exactly.
std::string coefficients_to_json(const WeightTable& table);

/// Throws IoError on malformed JSON, a version or codeword-order mismatch, a
/// weight count other than N^M, or a weight outside [0, 1].
WeightTable coefficients_from_json(std::string_view text);

void write_coefficients(const WeightTable& table, const std::filesystem::path& path);
WeightTable read_coefficients(const std::filesystem::path& path);

}  // namespace smurf
