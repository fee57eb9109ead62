#include "rotgraph/map_spec.hpp"

#include "overloaded.hpp"
#include "rotgraph/errors.hpp"
#include "rotgraph/gallery.hpp"

namespace rotgraph {

using detail::overloaded;
using nlohmann::json;

namespace {

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(ErrorCode::Input, std::string("expected a number for '") + key + "'");
  return j.at(key).get<double>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Input, std::string("missing field '") + key + "'");
  return j.at(key);
}

Vec2 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorCode::Input, "expected a 2-vector");
  return {j[0].get<double>(), j[1].get<double>()};
}

IntVec2 int_vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    fail(ErrorCode::Input, "expected an integer 2-vector");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::Input, "expected a 2x2 integer matrix");
  IntVec2 r0 = int_vec_from_json(j[0]);
  IntVec2 r1 = int_vec_from_json(j[1]);
  return {r0.x, r0.y, r1.x, r1.y};
}

json matrix_to_json(const IntMatrix& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

}  // namespace

json profile_to_json(const Profile& p) {
  json out = std::visit(overloaded{
                            [](const Sin2& s) { return json{{"amplitude", s.amplitude}, {"phase", s.phase}}; },
                            [](const TriangleBump& s) {
                              return json{{"center", s.center}, {"half_width", s.half_width}, {"height", s.height}};
                            },
                            [](const RaisedCosine& s) {
                              return json{{"center", s.center}, {"half_width", s.half_width}, {"amplitude", s.amplitude}, {"flat", s.flat}};
                            },
                            [](const PiecewiseLinearTable& s) {
                              json knots = json::array();
                              for (auto [t, v] : s.knots) knots.push_back(json::array({t, v}));
                              return json{{"knots", knots}};
                            },
                            [](const Constant& s) { return json{{"value", s.value}}; },
                            [](const Coordinate&) { return json::object(); },
                            [](const AnnularRamp& s) { return json{{"lo", s.lo}, {"hi", s.hi}}; },
                        },
                        p.form());
  out["kind"] = std::string(p.kind());
  return out;
}

Profile profile_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::Input, "profile must be an object");
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "sin2") return Profile(Sin2{number(j, "amplitude", 1.0), number(j, "phase", 0.0)});
  if (kind == "triangle")
    return Profile(TriangleBump{number(j, "center", 0.5), number(j, "half_width", 0.25), number(j, "height", 1.0)});
  if (kind == "raised_cosine")
    return Profile(RaisedCosine{number(j, "center", 0.5), number(j, "half_width", 0.25), number(j, "amplitude", 1.0),
                                number(j, "flat", 0.0)});
  if (kind == "pl_table") {
    PiecewiseLinearTable t;
    for (const auto& k : field(j, "knots")) {
      Vec2 v = vec_from_json(k);
      t.knots.emplace_back(v.x, v.y);
    }
    return Profile(std::move(t));
  }
  if (kind == "constant") return Profile(Constant{number(j, "value", 0.0)});
  if (kind == "coordinate") return Profile(Coordinate{});
  if (kind == "annular_ramp") return Profile(AnnularRamp{number(j, "lo", 0.25), number(j, "hi", 0.75)});
  fail(ErrorCode::Input, "unknown profile kind '" + kind + "'");
}

json map_to_json(const LiftedMap& f) {
  json prims = json::array();
  for (const auto& prim : f.primitives()) {
    prims.push_back(std::visit(
        overloaded{
            [](const Translation& t) { return json{{"kind", "translation"}, {"v", json::array({t.v.x, t.v.y})}}; },
            [](const Linear& l) { return json{{"kind", "linear"}, {"m", matrix_to_json(l.m)}}; },
            [](const ShearX& s) {
              return json{{"kind", "shear_x"}, {"profile", profile_to_json(s.profile)}, {"strength", s.strength}};
            },
            [](const ShearY& s) {
              return json{{"kind", "shear_y"}, {"profile", profile_to_json(s.profile)}, {"strength", s.strength}};
            },
            [](const VerticalFlow& v) {
              return json{{"kind", "vertical_flow"}, {"field", profile_to_json(v.field)}, {"time", v.time}};
            },
            [](const Custom& c) { return json{{"kind", "custom"}, {"name", c.impl->name()}, {"params", c.impl->params()}}; },
        },
        prim));
  }
  return json{{"primitives", prims}, {"deck_offset", json::array({f.deck_offset().x, f.deck_offset().y})}};
}

LiftedMap map_from_json(const json& j) {
  try {
    std::vector<Primitive> prims;
    for (const auto& p : field(j, "primitives")) {
      std::string kind = field(p, "kind").get<std::string>();
      if (kind == "translation") {
        prims.emplace_back(Translation{vec_from_json(field(p, "v"))});
      } else if (kind == "linear") {
        prims.emplace_back(Linear{matrix_from_json(field(p, "m"))});
      } else if (kind == "shear_x") {
        prims.emplace_back(ShearX{profile_from_json(field(p, "profile")), number(p, "strength", 1.0)});
      } else if (kind == "shear_y") {
        prims.emplace_back(ShearY{profile_from_json(field(p, "profile")), number(p, "strength", 1.0)});
      } else if (kind == "vertical_flow") {
        prims.emplace_back(VerticalFlow{profile_from_json(field(p, "field")), number(p, "time", 1.0)});
      } else if (kind == "custom") {
        prims.emplace_back(Custom{make_custom_primitive(field(p, "name").get<std::string>(),
                                                        p.contains("params") ? p.at("params") : json::object())});
      } else {
        fail(ErrorCode::Input, "unknown primitive kind '" + kind + "'");
      }
    }
    IntVec2 deck = j.contains("deck_offset") ? int_vec_from_json(j.at("deck_offset")) : IntVec2{};
    return LiftedMap(std::move(prims), deck);
  } catch (const json::exception& e) {
    fail(ErrorCode::Input, std::string("map spec: ") + e.what());
  }
}

LiftedMap parse_map_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Input, "map spec parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return map_from_json(j);
}

}  // namespace rotgraph
