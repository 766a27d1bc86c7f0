#pragma once

// JSON and CSV plumbing for tree and boundary functions.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "treedyn/tree.hpp"

namespace treedyn {

using json = nlohmann::json;

/// {"q", "radius", "entries": [{"word", "re", "im"}]}; only nonzero values are listed.
json to_json(const TreeFunction& f);
/// {"q", "depth", "entries": [{"word", "re", "im"}]}; one entry per anchor.
json to_json(const ConeFunction& F);

TreeFunction tree_function_from_json(const json& j);
ConeFunction cone_function_from_json(const json& j);

/// 17 significant digits, so every double survives a round trip.
std::string format_double(double x);

/// Serializes with format_double for every floating-point number. Non-finite
/// numbers are written as null.
std::string dump_json(const json& j, int indent = 2);

}  // namespace treedyn
