// rotgraph command-line front end. Every command writes one JSON artifact (rotset also writes
// the hull CSV and an optional SVG) into --out and echoes it on stdout.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotgraph/classifier.hpp"
#include "rotgraph/curve.hpp"
#include "rotgraph/errors.hpp"
#include "rotgraph/farey.hpp"
#include "rotgraph/fine_graph.hpp"
#include "rotgraph/gallery.hpp"
#include "rotgraph/io.hpp"
#include "rotgraph/map_spec.hpp"
#include "rotgraph/rational.hpp"
#include "rotgraph/rotation_set.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rotgraph;

namespace {

struct MapSource {
  std::string map_path;
  std::string gallery;
  std::vector<std::string> params;  // key=value, value parsed as JSON when possible
  std::string v;                    // shorthand for the translation vector
};

struct Common {
  MapSource map;
  std::string out = ".";
  std::string thresholds_path;
  bool seedless = false;
};

void add_map_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--map", c.map.map_path, "map spec JSON file");
  cmd->add_option("--gallery", c.map.gallery, "gallery map name");
  cmd->add_option("--param", c.map.params, "gallery parameter key=value");
  cmd->add_option("--v", c.map.v, "translation vector x,y (gallery translation)");
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--thresholds", c.thresholds_path, "thresholds JSON file");
  cmd->add_flag("--seedless", c.seedless, "accepted for compatibility; all computations are deterministic");
}

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorCode::Input, "bad number '" + item + "' in '" + text + "'");
    }
  }
  return out;
}

std::vector<std::int64_t> parse_schedule(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  for (double d : split_numbers(text)) {
    if (d != std::floor(d) || d < 1) fail(ErrorCode::Input, "schedule entries must be positive integers");
    auto n = static_cast<std::int64_t>(d);
    if (!out.empty() && n <= out.back()) fail(ErrorCode::Input, "schedule must be strictly increasing");
    out.push_back(n);
  }
  return out;
}

json gallery_params(const MapSource& m) {
  json p = json::object();
  for (const auto& kv : m.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) fail(ErrorCode::Input, "--param expects key=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    json parsed = json::parse(value, nullptr, false);
    p[key] = parsed.is_discarded() ? json(value) : parsed;
  }
  if (!m.v.empty()) {
    auto v = split_numbers(m.v);
    if (v.size() != 2) fail(ErrorCode::Input, "--v expects two numbers x,y");
    p["v"] = {v[0], v[1]};
  }
  return p;
}

struct LoadedMap {
  LiftedMap map;
  json source;
};

LoadedMap load_map(const MapSource& m) {
  if (m.map_path.empty() == m.gallery.empty()) fail(ErrorCode::Input, "exactly one of --map and --gallery is required");
  if (!m.map_path.empty()) {
    if (!m.params.empty() || !m.v.empty()) fail(ErrorCode::Input, "--param and --v apply to --gallery only");
    LiftedMap f = parse_map_spec(read_text(m.map_path));
    return {f, {{"map", m.map_path}, {"spec", map_to_json(f)}}};
  }
  json p = gallery_params(m);
  LiftedMap f = gallery_build(m.gallery, p);
  return {f, {{"gallery", m.gallery}, {"params", p}, {"spec", map_to_json(f)}}};
}

ShapeThresholds load_thresholds(const Common& c) {
  if (c.thresholds_path.empty()) return {};
  json j = json::parse(read_text(c.thresholds_path), nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::Malformed, "thresholds file is not valid JSON");
  return thresholds_from_json(j);
}

// Curve arguments: a file, or h:<y>, v:<x>, line:<a>,<b> for straight curves.
PLCurve load_curve(const std::string& spec) {
  auto starts = [&](const char* p) { return spec.rfind(p, 0) == 0; };
  if (starts("h:")) return horizontal_curve(parse_rational(spec.substr(2)));
  if (starts("v:")) return vertical_curve(parse_rational(spec.substr(2)));
  if (starts("line:")) {
    auto v = split_numbers(spec.substr(5));
    if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
      fail(ErrorCode::Input, "line:<a>,<b> expects integer class entries");
    return straight_curve({static_cast<std::int64_t>(v[0]), static_cast<std::int64_t>(v[1])});
  }
  return read_curve_file(spec);
}

json envelope(const std::string& command, json config, json result) {
  return {{"version", kToolVersion}, {"command", command}, {"config", std::move(config)}, {"result", std::move(result)}};
}

void emit(const Common& c, const std::string& file, const json& artifact) {
  std::string text = artifact.dump(2) + "\n";
  write_text(fs::path(c.out) / file, text);
  std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation sets, curve crossings and fine curve graph bounds for torus maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;

  // rotset
  std::int64_t n = 500;
  int grid = 64;
  std::string schedule;
  bool svg = false, cloud = false;
  auto* rotset = app.add_subcommand("rotset", "estimate the rotation set");
  add_map_options(rotset, common);
  add_common(rotset, common);
  rotset->add_option("-n,--n", n, "iterate count");
  rotset->add_option("--grid", grid, "grid resolution");
  rotset->add_option("--schedule", schedule, "comma-separated iterate counts for convergence diagnostics");
  rotset->add_flag("--svg", svg, "also write rotset.svg");
  rotset->add_flag("--cloud", cloud, "include the displacement cloud in the SVG");

  // classify
  std::int64_t nmax = 5;
  std::string curve_a = "h:1/2", curve_b;
  bool no_cross = false;
  int res = 64;
  double max_chord = 0.0;
  auto* classify_cmd = app.add_subcommand("classify", "classify the induced isometry type");
  add_map_options(classify_cmd, common);
  add_common(classify_cmd, common);
  classify_cmd->add_option("-n,--n", n, "iterate count for the rotation set estimate");
  classify_cmd->add_option("--grid", grid, "grid resolution");
  classify_cmd->add_option("--nmax", nmax, "largest power tried for annulus traps");
  classify_cmd->add_option("--curve-a", curve_a, "reference curve for the cross-check");
  classify_cmd->add_option("--schedule", schedule, "cross-check iterate counts");
  classify_cmd->add_option("--res", res, "image-curve samples per segment");
  classify_cmd->add_option("--max-chord", max_chord, "adaptive image-curve chord bound (0 disables)");
  classify_cmd->add_flag("--no-cross-check", no_cross, "skip the crossing cross-check");

  // crossing
  auto* crossing = app.add_subcommand("crossing", "crossing numbers of iterated images of a curve");
  add_map_options(crossing, common);
  add_common(crossing, common);
  crossing->add_option("--curve-a", curve_a, "curve (file, h:<y>, v:<x> or line:<a>,<b>)");
  crossing->add_option("--schedule", schedule, "comma-separated iterate counts");
  crossing->add_option("--nmax", nmax, "iterate counts 1..nmax when no schedule is given");
  crossing->add_option("--res", res, "image-curve samples per segment");
  crossing->add_option("--max-chord", max_chord, "adaptive image-curve chord bound (0 disables)");

  // distance
  auto* distance = app.add_subcommand("distance", "fine curve graph distance bounds with a certificate");
  add_common(distance, common);
  distance->add_option("--curve-a", curve_a, "first curve")->required();
  distance->add_option("--curve-b", curve_b, "second curve")->required();

  // verify-certificate
  std::string cert_path;
  auto* verify = app.add_subcommand("verify-certificate", "re-validate a certificate from its files");
  verify->add_option("certificate", cert_path, "certificate or distance JSON")->required();

  // gallery
  auto* gallery = app.add_subcommand("gallery", "catalog of example maps");
  gallery->require_subcommand(1);
  auto* glist = gallery->add_subcommand("list", "list the catalog");
  glist->add_option("--out", common.out, "output directory");
  auto* gbuild = gallery->add_subcommand("build", "emit the map spec of a gallery entry");
  std::string build_name;
  gbuild->add_option("name", build_name, "gallery entry")->required();
  gbuild->add_option("--param", common.map.params, "parameter key=value");
  gbuild->add_option("--v", common.map.v, "translation vector x,y");
  gbuild->add_option("--out", common.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err = {{"error", {{"code", "Input"}, {"message", e.what()}, {"exit_status", 2}}}, {"version", kToolVersion}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }

  try {
    if (rotset->parsed()) {
      auto loaded = load_map(common.map);
      ShapeThresholds th = load_thresholds(common);
      auto sched = parse_schedule(schedule);
      if (n < 1 || grid < 1) fail(ErrorCode::Input, "-n and --grid must be positive");
      RotSetEstimate est = mz_estimate(loaded.map, n, grid, th);
      json config = {{"source", loaded.source}, {"n", n}, {"grid", grid}, {"schedule", sched},
                     {"thresholds", thresholds_to_json(th)}, {"svg", svg}, {"cloud", cloud}};
      json result = estimate_to_json(est);
      if (!sched.empty()) {
        json diag = json::array();
        for (const auto& d : convergence_diagnostics(loaded.map, sched, grid)) {
          json row = {{"n", d.n}, {"hull", hull_json(d.hull)}};
          row["delta"] = d.delta ? json(*d.delta) : json(nullptr);
          diag.push_back(row);
        }
        result["convergence"] = diag;
      }
      write_text(fs::path(common.out) / "hull.csv", hull_csv(est.hull));
      if (svg) {
        SvgOptions so;
        so.title = loaded.source.contains("gallery") ? loaded.source["gallery"].get<std::string>() : "rotation set";
        if (cloud) so.cloud = displacement_field_parallel(loaded.map, n, grid);
        write_text(fs::path(common.out) / "rotset.svg", hull_svg(est.hull, so));
      }
      emit(common, "rotset.json", envelope("rotset", config, result));
      return 0;
    }

    if (classify_cmd->parsed()) {
      auto loaded = load_map(common.map);
      ClassifyParams params;
      params.n = n;
      params.grid_res = grid;
      params.thresholds = load_thresholds(common);
      params.trap_n_max = nmax;
      ClassificationReport rep = classify(loaded.map, params);
      CrossCheckOptions cc;
      auto sched = parse_schedule(schedule);
      if (!sched.empty()) cc.schedule = sched;
      cc.res = res;
      cc.max_chord = max_chord;
      if (!no_cross) rep.cross_check = cross_check(loaded.map, rep, load_curve(curve_a), cc);
      json config = {{"source", loaded.source}, {"n", n}, {"grid", grid}, {"nmax", nmax},
                     {"thresholds", thresholds_to_json(params.thresholds)}, {"curve_a", curve_a},
                     {"schedule", cc.schedule}, {"res", res}, {"max_chord", max_chord}, {"cross_check", !no_cross}};
      emit(common, "classify.json", envelope("classify", config, report_to_json(rep)));
      return 0;
    }

    if (crossing->parsed()) {
      auto loaded = load_map(common.map);
      PLCurve a = load_curve(curve_a);
      auto sched = parse_schedule(schedule);
      if (sched.empty())
        for (std::int64_t k = 1; k <= nmax; ++k) sched.push_back(k);
      json rows = json::array();
      for (std::int64_t k : sched) {
        ImageOptions io;
        io.iterations = k;
        io.res = res;
        io.max_chord = max_chord;
        io.reference = &a;
        PLCurve img = image_curve(loaded.map, a, io);
        IntVec2 cls = homology_class(img);
        json row = {{"n", k}, {"vertices", img.size()}, {"class", {cls.x, cls.y}}, {"intersections", transverse_count(a, img)}};
        if (same_slope(homology_class(a), cls))
          row["crossing"] = crossing_number(a, img);
        else
          row["crossing"] = nullptr;
        rows.push_back(row);
      }
      json config = {{"source", loaded.source}, {"curve_a", curve_a}, {"schedule", sched}, {"res", res},
                     {"max_chord", max_chord}};
      emit(common, "crossing.json", envelope("crossing", config, {{"rows", rows}}));
      return 0;
    }

    if (distance->parsed()) {
      PLCurve a = load_curve(curve_a), b = load_curve(curve_b);
      DistanceBounds d = upper_bound_by_intersection(a, b);
      json cert = write_certificate(common.out, "cert", *d.certificate);
      json config = {{"curve_a", curve_a}, {"curve_b", curve_b}};
      emit(common, "distance.json", envelope("distance", config, distance_to_json(d, cert)));
      return 0;
    }

    if (verify->parsed()) {
      fs::path p = cert_path;
      json j = json::parse(read_text(p), nullptr, false);
      if (!j.is_discarded() && j.contains("result")) {
        // A distance artifact: verify the embedded certificate against its sibling files.
        fs::path tmp = p.parent_path() / (p.stem().string() + ".certificate.json");
        write_text(tmp, j.at("result").at("certificate").dump(2) + "\n");
        p = tmp;
      }
      CertificateCheck chk = verify_certificate_file(p);
      json res_json = {{"valid", chk.valid()}, {"curves", chk.curves}, {"reason", chk.check.reason}};
      res_json["failing_step"] = chk.check.failing_step ? json(*chk.check.failing_step) : json(nullptr);
      res_json["mismatched_steps"] = chk.mismatched_steps;
      json out = envelope("verify-certificate", {{"certificate", cert_path}}, res_json);
      std::cout << out.dump(2) << "\n";
      return chk.valid() ? 0 : 1;
    }

    if (glist->parsed()) {
      emit(common, "gallery.json", envelope("gallery list", json::object(), gallery_list()));
      return 0;
    }
    if (gbuild->parsed()) {
      MapSource m = common.map;
      m.gallery = build_name;
      auto loaded = load_map(m);
      emit(common, "map.json", envelope("gallery build", loaded.source, map_to_json(loaded.map)));
      return 0;
    }
  } catch (const Error& e) {
    json err = {{"error", {{"code", to_string(e.code())}, {"message", e.what()}, {"exit_status", exit_status(e.code())}}},
                {"version", kToolVersion}};
    std::cout << err.dump(2) << "\n";
    return exit_status(e.code());
  } catch (const std::exception& e) {
    json err = {{"error", {{"code", "Internal"}, {"message", e.what()}, {"exit_status", 1}}}, {"version", kToolVersion}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
