#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotgraph/torus_map.hpp"

namespace rotgraph {

// (x, y) -> (x, y + strength sin(2 pi y) / (2 pi)); attracts towards y = 1/2.
class AnnulusAttractor final : public CustomPrimitive {
public:
  explicit AnnulusAttractor(double strength = 0.5);
  std::string name() const override { return "annulus_attractor"; }
  nlohmann::json params() const override { return {{"strength", strength_}}; }
  Vec2 apply(Vec2 p) const override;

private:
  double strength_;
};

// Resolves a named custom primitive; throws Input for unknown names or parameters.
std::shared_ptr<const CustomPrimitive> make_custom_primitive(const std::string& name, const nlohmann::json& params);

struct GalleryEntry {
  std::string name;
  std::string description;
  nlohmann::json defaults;
};

const std::vector<GalleryEntry>& gallery_entries();
// Catalog as JSON: name, description, parameter defaults and, for the Denjoy entries, the
// truncation tail error.
nlohmann::json gallery_list();
// Unspecified parameters take their defaults; unknown names or keys throw Input.
LiftedMap gallery_build(const std::string& name, const nlohmann::json& params = nlohmann::json::object());

}  // namespace rotgraph
