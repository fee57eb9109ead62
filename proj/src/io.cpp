#include "rotgraph/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rotgraph/errors.hpp"
#include "rotgraph/rational.hpp"

namespace rotgraph {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string px(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Input, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Input, "cannot write " + path.string());
  out << text;
}

// ---------------------------------------------------------------------------
// Curves

std::string format_curve(const PLCurve& c) {
  std::string out;
  auto line = [&](const QVec2& v) { out += format_rational(v.x) + " " + format_rational(v.y) + "\n"; };
  for (const auto& v : c.vertices()) line(v);
  line(c.vertices().front() + c.closing());
  out += "# class " + std::to_string(c.closing().x) + " " + std::to_string(c.closing().y) + "\n";
  return out;
}

PLCurve parse_curve(const std::string& text) {
  std::vector<QVec2> pts;
  std::optional<IntVec2> cls;
  std::size_t lineno = 0;
  for (const auto& line : lines_of(text)) {
    ++lineno;
    auto w = words(line);
    if (w.empty()) continue;
    if (w[0] == "#") {
      if (w.size() >= 2 && w[1] == "class") {
        if (w.size() != 4) fail(ErrorCode::Malformed, "curve file line " + std::to_string(lineno) + ": bad class line");
        try {
          cls = IntVec2{std::stoll(w[2]), std::stoll(w[3])};
        } catch (const std::exception&) {
          fail(ErrorCode::Malformed, "curve file line " + std::to_string(lineno) + ": bad class entries");
        }
      }
      continue;
    }
    if (cls) fail(ErrorCode::Malformed, "curve file: vertex after the class line");
    if (w.size() != 2) fail(ErrorCode::Malformed, "curve file line " + std::to_string(lineno) + ": expected two rationals");
    try {
      pts.push_back({parse_rational(w[0]), parse_rational(w[1])});
    } catch (const Error& e) {
      fail(ErrorCode::Malformed, "curve file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!cls) fail(ErrorCode::Malformed, "curve file: missing '# class a b' line");
  if (pts.size() < 2) fail(ErrorCode::Malformed, "curve file: need at least one vertex and the closing vertex");
  QVec2 shift = pts.back() - pts.front();
  if (!(shift == QVec2(*cls))) fail(ErrorCode::Malformed, "curve file: closing vertex does not match the class line");
  pts.pop_back();
  PLCurve c(std::move(pts), *cls);
  (void)homology_class(c);
  return c;
}

PLCurve read_curve_file(const fs::path& path) { return parse_curve(read_text(path)); }

void write_curve_file(const fs::path& path, const PLCurve& c) { write_text(path, format_curve(c)); }

// ---------------------------------------------------------------------------
// Hulls

std::string hull_csv(const ConvexRegion& hull) {
  std::string out = "x,y\n";
  for (const auto& v : hull.vertices()) out += num(v.x) + "," + num(v.y) + "\n";
  return out;
}

ConvexRegion parse_hull_csv(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "x,y") fail(ErrorCode::Malformed, "hull CSV: missing header");
  std::vector<Vec2> v;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto comma = lines[i].find(',');
    if (comma == std::string::npos) fail(ErrorCode::Malformed, "hull CSV: bad row " + std::to_string(i));
    try {
      v.push_back({std::stod(lines[i].substr(0, comma)), std::stod(lines[i].substr(comma + 1))});
    } catch (const std::exception&) {
      fail(ErrorCode::Malformed, "hull CSV: bad number in row " + std::to_string(i));
    }
  }
  return ConvexRegion::from_vertices(std::move(v));
}

std::string hull_svg(const ConvexRegion& hull, const SvgOptions& opts) {
  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  auto grow = [&](Vec2 p) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  };
  for (const auto& v : hull.vertices()) grow(v);
  for (const auto& v : opts.cloud) grow(v);
  xlo = std::floor(xlo);
  ylo = std::floor(ylo);
  xhi = std::ceil(xhi);
  yhi = std::ceil(yhi);
  double span = std::max(xhi - xlo, yhi - ylo);
  const double margin = 50.0, size = 700.0;
  auto sx = [&](double x) { return margin + (x - xlo) / span * size; };
  auto sy = [&](double y) { return margin + size - (y - ylo) / span * size; };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += std::string("<!-- ") + kToolVersion + " -->\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  out += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  if (!opts.title.empty()) out += "<title>" + opts.title + "</title>\n";
  for (double g = xlo; g <= xlo + span + 1e-9; g += 1.0)
    out += "<line x1=\"" + px(sx(g)) + "\" y1=\"" + px(sy(ylo)) + "\" x2=\"" + px(sx(g)) + "\" y2=\"" +
           px(sy(ylo + span)) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  for (double g = ylo; g <= ylo + span + 1e-9; g += 1.0)
    out += "<line x1=\"" + px(sx(xlo)) + "\" y1=\"" + px(sy(g)) + "\" x2=\"" + px(sx(xlo + span)) + "\" y2=\"" +
           px(sy(g)) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + px(sx(0)) + "\" y1=\"" + px(sy(ylo)) + "\" x2=\"" + px(sx(0)) + "\" y2=\"" +
         px(sy(ylo + span)) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  out += "<line x1=\"" + px(sx(xlo)) + "\" y1=\"" + px(sy(0)) + "\" x2=\"" + px(sx(xlo + span)) + "\" y2=\"" +
         px(sy(0)) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  for (const auto& p : opts.cloud)
    out += "<circle cx=\"" + px(sx(p.x)) + "\" cy=\"" + px(sy(p.y)) + "\" r=\"1.5\" fill=\"#4477aa\"/>\n";
  if (hull.size() == 1) {
    Vec2 p = hull.vertices()[0];
    out += "<circle cx=\"" + px(sx(p.x)) + "\" cy=\"" + px(sy(p.y)) + "\" r=\"4\" fill=\"#cc3311\"/>\n";
  } else if (!hull.empty()) {
    out += "<polygon points=\"";
    for (std::size_t i = 0; i < hull.size(); ++i) {
      if (i) out += " ";
      out += px(sx(hull.vertices()[i].x)) + "," + px(sy(hull.vertices()[i].y));
    }
    out += "\" fill=\"#cc3311\" fill-opacity=\"0.35\" stroke=\"#cc3311\" stroke-width=\"2\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

// ---------------------------------------------------------------------------
// JSON

json thresholds_to_json(const ShapeThresholds& th) {
  return {{"point_diameter", th.point_diameter},
          {"segment_width", th.segment_width},
          {"interior_area", th.interior_area},
          {"max_denominator", th.max_denominator},
          {"partial_quotient_cutoff", th.partial_quotient_cutoff},
          {"rational_point_denominator", th.rational_point_denominator},
          {"interval_length", th.interval_length}};
}

ShapeThresholds thresholds_from_json(const json& j, ShapeThresholds th) {
  if (!j.is_object()) fail(ErrorCode::Input, "thresholds must be a JSON object");
  auto real = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number() || !(j.at(key).get<double>() > 0.0))
      fail(ErrorCode::Input, std::string("threshold '") + key + "' must be a positive number");
    dst = j.at(key).get<double>();
  };
  auto whole = [&](const char* key, std::int64_t& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer() || j.at(key).get<std::int64_t>() <= 0)
      fail(ErrorCode::Input, std::string("threshold '") + key + "' must be a positive integer");
    dst = j.at(key).get<std::int64_t>();
  };
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!thresholds_to_json(th).contains(key)) fail(ErrorCode::Input, "unknown threshold '" + key + "'");
  }
  real("point_diameter", th.point_diameter);
  real("segment_width", th.segment_width);
  real("interior_area", th.interior_area);
  whole("max_denominator", th.max_denominator);
  real("partial_quotient_cutoff", th.partial_quotient_cutoff);
  whole("rational_point_denominator", th.rational_point_denominator);
  real("interval_length", th.interval_length);
  return th;
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

json hull_json(const ConvexRegion& hull) {
  json verts = json::array();
  for (const auto& v : hull.vertices()) verts.push_back(vec_json(v));
  return verts;
}

json estimate_to_json(const RotSetEstimate& e) {
  json shape = {{"kind", to_string(e.shape.kind)},
                {"diameter", e.shape.diameter},
                {"min_width", e.shape.min_width},
                {"area", e.shape.area}};
  if (e.shape.kind == ShapeKind::Segment) {
    shape["end_a"] = vec_json(e.shape.end_a);
    shape["end_b"] = vec_json(e.shape.end_b);
    shape["slope"] = {{"rational", e.shape.slope.rational},
                      {"direction", {e.shape.slope.direction.x, e.shape.slope.direction.y}},
                      {"terms", e.shape.slope.terms}};
  }
  json diag = json::array();
  for (const auto& s : e.diagnostics) {
    json row = {{"n", s.n}};
    row["delta"] = s.delta ? json(*s.delta) : json(nullptr);
    diag.push_back(row);
  }
  return {{"n", e.n},
          {"grid_res", e.grid_res},
          {"hull", hull_json(e.hull)},
          {"hull_csv", hull_csv(e.hull)},
          {"shape", shape},
          {"thresholds", thresholds_to_json(e.thresholds)},
          {"diagnostics", diag}};
}

json interval_to_json(const RotInterval& r) { return {{"lo", r.lo}, {"hi", r.hi}, {"length", r.length()}}; }

json translation_length_to_json(const TranslationLengthBounds& b) {
  json rows = json::array();
  for (const auto& r : b.trace)
    rows.push_back({{"n", r.n}, {"count", r.count}, {"farey", r.farey}, {"upper", r.upper}, {"lower", r.lower},
                    {"method", r.method}});
  return {{"upper", b.upper}, {"lower", b.lower}, {"trace", rows}};
}

json cross_check_to_json(const CrossCheck& c) {
  json samples = json::array();
  for (const auto& s : c.samples) samples.push_back({{"n", s.n}, {"value", s.value}});
  json out = {{"channel", c.channel},
              {"curve_class", c.curve_class},
              {"samples", samples},
              {"max_value", c.max_value},
              {"consistent", c.consistent()},
              {"violations", c.violations},
              {"notes", c.notes}};
  out["fit_exponent"] = c.fit_exponent ? json(*c.fit_exponent) : json(nullptr);
  if (c.translation_length) out["translation_length"] = translation_length_to_json(*c.translation_length);
  return out;
}

namespace {

json curve_inline(const PLCurve& c) { return format_curve(c); }

}  // namespace

json report_to_json(const ClassificationReport& r) {
  const auto& iso = r.isotopy;
  json out = {{"verdict", to_string(r.verdict)},
              {"route", to_string(r.route)},
              {"reason", r.reason},
              {"isotopy",
               {{"kind", to_string(iso.kind)},
                {"linear", iso.linear.to_string()},
                {"curve_class", {iso.curve_class.x, iso.curve_class.y}},
                {"power", iso.power},
                {"negated", iso.negated},
                {"order", iso.order}}},
              {"power_applied", r.power_applied},
              {"params",
               {{"n", r.params.n},
                {"grid_res", r.params.grid_res},
                {"trap_n_max", r.params.trap_n_max},
                {"trap_samples", r.params.trap_samples},
                {"search_annuli", r.params.search_annuli},
                {"point_trend_ratio", r.params.point_trend_ratio},
                {"provided_annuli", r.params.annuli.size()}}},
              {"thresholds", thresholds_to_json(r.params.thresholds)}};
  out["estimate"] = r.estimate ? estimate_to_json(*r.estimate) : json(nullptr);
  out["interval"] = r.interval ? interval_to_json(*r.interval) : json(nullptr);
  out["rational_point"] = r.rational_point ? json{{"p1", r.rational_point->p1},
                                                  {"p2", r.rational_point->p2},
                                                  {"q", r.rational_point->q},
                                                  {"distance", r.rational_point->distance}}
                                           : json(nullptr);
  if (r.area_budget) {
    out["area_budget"] = *r.area_budget;
    out["area_budget_caveat"] = "the estimated area carries an O(1/n) error";
  } else {
    out["area_budget"] = nullptr;
  }
  out["shrink_ratio"] = r.shrink_ratio ? json(*r.shrink_ratio) : json(nullptr);
  if (r.certificate) {
    out["certificate"] = {{"label", r.certificate->label},
                          {"n", r.certificate->n},
                          {"margin", r.certificate->margin},
                          {"samples", r.certificate->samples},
                          {"lower", curve_inline(r.certificate->lower)},
                          {"upper", curve_inline(r.certificate->upper)}};
  } else {
    out["certificate"] = nullptr;
  }
  out["cross_check"] = r.cross_check ? cross_check_to_json(*r.cross_check) : json(nullptr);
  return out;
}

json write_certificate(const fs::path& dir, const std::string& stem, const CertifiedPath& path) {
  json files = json::array(), steps = json::array();
  for (std::size_t i = 0; i < path.curves.size(); ++i) {
    std::string name = stem + "_" + std::to_string(i) + ".curve";
    write_curve_file(dir / name, path.curves[i]);
    files.push_back(name);
  }
  for (std::size_t i = 0; i + 1 < path.curves.size(); ++i)
    steps.push_back({{"from", i}, {"to", i + 1}, {"intersections", transverse_count(path.curves[i], path.curves[i + 1])}});
  return {{"curves", files}, {"steps", steps}, {"length", path.bound()}};
}

json distance_to_json(const DistanceBounds& d, const json& certificate) {
  return {{"lower", d.lower}, {"upper", d.upper}, {"intersections", d.intersections}, {"certificate", certificate}};
}

CertificateCheck verify_certificate_file(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Malformed, std::string("certificate JSON: ") + e.what());
  }
  const json* cert = &j;
  if (j.contains("certificate")) cert = &j.at("certificate");
  if (!cert->is_object() || !cert->contains("curves") || !cert->at("curves").is_array())
    fail(ErrorCode::Malformed, "certificate JSON: missing curve list");
  CertifiedPath p;
  fs::path base = path.parent_path();
  for (const auto& name : cert->at("curves")) {
    if (!name.is_string()) fail(ErrorCode::Malformed, "certificate JSON: curve entries must be file names");
    p.curves.push_back(read_curve_file(base / name.get<std::string>()));
  }
  CertificateCheck out;
  out.curves = p.curves.size();
  out.check = verify_path(p);
  if (out.check.valid && cert->contains("steps")) {
    for (const auto& s : cert->at("steps")) {
      auto from = s.at("from").get<std::size_t>(), to = s.at("to").get<std::size_t>();
      if (to != from + 1 || to >= p.curves.size()) fail(ErrorCode::Malformed, "certificate JSON: bad step indices");
      if (transverse_count(p.curves[from], p.curves[to]) != s.at("intersections").get<std::size_t>())
        out.mismatched_steps.push_back(from);
    }
  }
  return out;
}

}  // namespace rotgraph
