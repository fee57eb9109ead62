#pragma once

#include <string>

#include <json.hpp>

#include "rotgraph/profile.hpp"
#include "rotgraph/torus_map.hpp"

namespace rotgraph {

nlohmann::json profile_to_json(const Profile& p);
Profile profile_from_json(const nlohmann::json& j);

nlohmann::json map_to_json(const LiftedMap& f);
// Custom primitives are resolved through the gallery registry.
LiftedMap map_from_json(const nlohmann::json& j);

// Parse errors carry the byte offset reported by the JSON reader.
LiftedMap parse_map_spec(const std::string& text);

}  // namespace rotgraph
