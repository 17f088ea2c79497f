#pragma once

#include <string>

#include <json.hpp>

#include "cubecover/cube.hpp"
#include "cubecover/hyperplane.hpp"
#include "cubecover/params.hpp"
#include "cubecover/rat.hpp"

namespace cubecover {

using nlohmann::json;

/// Canonical cover file format:
///   { "n": 3, "planes": [ { "normal": ["1","0","-3/2"], "offset": "1" } ] }
/// Rationals are decimal-integer strings "p" or "p/q" (JSON integers are
/// also accepted); any other token is rejected, floats in particular.
Cover cover_from_json(const json& j);
json cover_to_json(const Cover& c);
Cover load_cover(const std::string& path);

/// Rational token in a data file. Strict: strings "p" / "p/q" and JSON
/// integers only.
Rat rat_from_json(const json& j);
inline json rat_to_json(const Rat& r) { return r.to_string(); }

/// Parameter files accept the same tokens plus plain decimals ("0.1961")
/// and JSON numbers (converted exactly from their binary value).
Rat param_rat_from_json(const json& j);
ParamSet params_from_json(const json& j);
ParamSet load_params(const std::string& path);
json params_to_json(const ParamSet& p);

json vertex_to_json(const Vertex& v);
Vertex vertex_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace cubecover
