#pragma once

// Set descriptors and sampled functions to and from JSON / CSV, plus the
// fixed-precision number formatting shared by every emitted table.

#include <string>

#include <json.hpp>

#include "fls/sampled_function.hpp"
#include "fls/setkit.hpp"

namespace fls {

using json = nlohmann::json;

/// {"type": "cantor", "base_interval": [1,2], "branches": 2, "contraction": "1/3"}
/// {"type": "polyseq", "exponent": 1}
/// {"type": "interval", "interval": [1,2]}
/// {"type": "points", "points": [1.5]}
/// {"type": "union", "sets": [...]}
/// Any set may carry an optional "name". Throws parse_error / invalid_set.
SetDescriptor set_from_json(const json& j);
json set_to_json(const SetDescriptor& set);

SetDescriptor parse_set(const std::string& text);

/// "name" field when present, otherwise a short generated label.
std::string set_label(const json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Accepts a number or a "p/q" string.
double parse_rational(const json& v);

/// Fixed 12-significant-digit formatting; "inf"/"-inf"/"nan" spelled out.
std::string fmt(double x);

std::string to_csv(const SampledFunction& f, const std::string& x_name, const std::string& y_name);
json to_json(const SampledFunction& f);

}  // namespace fls
