#include "rotgraph/gallery.hpp"

#include <cmath>
#include <numbers>

#include "rotgraph/denjoy.hpp"
#include "rotgraph/errors.hpp"

namespace rotgraph {

using nlohmann::json;

AnnulusAttractor::AnnulusAttractor(double strength) : strength_(strength) {
  if (!std::isfinite(strength_) || strength_ <= -1.0 || strength_ >= 1.0)
    fail(ErrorCode::Input, "annulus_attractor: strength must lie in (-1, 1)");
}

Vec2 AnnulusAttractor::apply(Vec2 p) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return {p.x, p.y + strength_ * std::sin(two_pi * p.y) / two_pi};
}

namespace {

const GalleryEntry* find_entry(const std::string& name) {
  for (const auto& e : gallery_entries())
    if (e.name == name) return &e;
  return nullptr;
}

// Defaults overlaid with the given values; keys must be known.
json merged(const std::string& name, const json& defaults, const json& params) {
  if (!params.is_null() && !params.is_object()) fail(ErrorCode::Input, name + ": parameters must be an object");
  json out = defaults;
  if (params.is_object())
    for (const auto& [key, value] : params.items()) {
      if (!defaults.contains(key)) fail(ErrorCode::Input, name + ": unknown parameter '" + key + "'");
      out[key] = value;
    }
  return out;
}

double number(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) fail(ErrorCode::Input, std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(ErrorCode::Input, std::string("parameter '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

Vec2 vec(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(ErrorCode::Input, std::string("parameter '") + key + "' must be a pair of numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

IntMatrix matrix(const json& j, const char* key) {
  const json& v = j.at(key);
  auto entry = [&](int r, int c) {
    if (!v.is_array() || v.size() != 2 || !v[r].is_array() || v[r].size() != 2 || !v[r][c].is_number_integer())
      fail(ErrorCode::Input, std::string("parameter '") + key + "' must be a 2x2 integer matrix");
    return v[r][c].get<std::int64_t>();
  };
  return {entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
}

std::shared_ptr<const DenjoyMap> denjoy_from(const json& p) {
  return std::make_shared<const DenjoyMap>(DenjoyParams{number(p, "alpha"), integer(p, "k_max")});
}

const json kDenjoyDefaults = {{"alpha", DenjoyParams{}.alpha}, {"k_max", DenjoyParams{}.k_max}};

json with_denjoy(json extra) {
  json out = kDenjoyDefaults;
  out.update(extra);
  return out;
}

}  // namespace

const std::vector<GalleryEntry>& gallery_entries() {
  static const std::vector<GalleryEntry> entries = {
      {"translation", "rigid translation by v", {{"v", {0.3, 0.7}}}},
      {"anosov", "linear automorphism", {{"m", {{2, 1}, {1, 1}}}}},
      {"twist_model", "linear twist [[1,r],[0,1]] followed by a vertical drift", {{"r", 1}, {"drift", 0.1}}},
      {"dehn_twist_annular", "Dehn twist supported in the annulus lo < y < hi", {{"lo", 0.25}, {"hi", 0.75}}},
      {"twist_with_interval", "linear twist followed by the vertical flow of sin^2(pi x)", {{"time", 1.0}}},
      {"shear_segment", "horizontal shear by strength sin^2(pi y)", {{"strength", 1.0}}},
      {"mz_interior", "horizontal then vertical flat-topped sin^2 bump shear followed by a translation",
       {{"a", 1.0}, {"b", 1.0}, {"c", 0.0}, {"d", 0.0}}},
      {"denjoy_parabolic", "wandering-strip push over the Denjoy suspension", with_denjoy({{"epsilon", 0.5}})},
      {"denjoy_irrational_flow", "Denjoy suspension flow slowed to rest inside the strip",
       with_denjoy({{"time", 1.0}})},
      {"annulus_attractor", "vertical contraction towards y = 1/2", {{"strength", 0.5}}},
  };
  return entries;
}

json gallery_list() {
  json out = json::array();
  for (const auto& e : gallery_entries()) {
    json item = {{"name", e.name}, {"description", e.description}, {"params", e.defaults}};
    if (e.defaults.contains("k_max")) {
      DenjoyMap d(DenjoyParams{e.defaults.at("alpha").get<double>(), e.defaults.at("k_max").get<std::int64_t>()});
      item["tail_error"] = d.tail_error();
    }
    out.push_back(std::move(item));
  }
  return out;
}

std::shared_ptr<const CustomPrimitive> make_custom_primitive(const std::string& name, const json& params) {
  const GalleryEntry* entry = find_entry(name);
  if (name == "denjoy_parabolic") {
    json p = merged(name, entry->defaults, params);
    return std::make_shared<const DenjoyParabolic>(denjoy_from(p), number(p, "epsilon"));
  }
  if (name == "denjoy_irrational_flow") {
    json p = merged(name, entry->defaults, params);
    return std::make_shared<const DenjoyFlow>(denjoy_from(p), number(p, "time"));
  }
  if (name == "annulus_attractor") {
    json p = merged(name, entry->defaults, params);
    return std::make_shared<const AnnulusAttractor>(number(p, "strength"));
  }
  fail(ErrorCode::Input, "unknown custom primitive '" + name + "'");
}

LiftedMap gallery_build(const std::string& name, const json& params) {
  const GalleryEntry* entry = find_entry(name);
  if (!entry) fail(ErrorCode::Input, "unknown gallery map '" + name + "'");
  json p = merged(name, entry->defaults, params);
  const Profile sin2{Sin2{}};

  if (name == "translation") return translation(vec(p, "v"));
  if (name == "anosov") return linear(matrix(p, "m"));
  if (name == "twist_model")
    return LiftedMap({Linear{{1, integer(p, "r"), 0, 1}}, Translation{{0.0, number(p, "drift")}}});
  if (name == "dehn_twist_annular") return shear_x(Profile(AnnularRamp{number(p, "lo"), number(p, "hi")}), 1.0);
  if (name == "twist_with_interval")
    return LiftedMap({Linear{{1, 1, 0, 1}}, VerticalFlow{sin2, number(p, "time")}});
  if (name == "shear_segment") return shear_x(sin2, number(p, "strength"));
  if (name == "mz_interior") {
    if (!(number(p, "a") > 0.0 && number(p, "b") > 0.0)) fail(ErrorCode::Input, "mz_interior: a and b must be positive");
    // Zero on a band and one on a plateau, so displacements (0,0), (1,0), (0,1), (1,1) occur on open sets.
    const Profile bump{RaisedCosine{0.5, 0.4, 1.0, 0.15}};
    return LiftedMap({ShearX{bump, number(p, "a")}, ShearY{bump, number(p, "b")},
                      Translation{{number(p, "c"), number(p, "d")}}});
  }
  return custom(make_custom_primitive(name, p));
}

}  // namespace rotgraph
