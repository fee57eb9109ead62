// Acceptance runner: one PASS/FAIL line per criterion. Outcomes listed under "known_failures"
// in the expectations manifest are still printed as FAIL but do not fail the process.
//
//   acceptance [--cli PATH] [--expect FILE] [--only 3,7] [--work DIR]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotgraph/classifier.hpp"
#include "rotgraph/curve.hpp"
#include "rotgraph/denjoy.hpp"
#include "rotgraph/errors.hpp"
#include "rotgraph/farey.hpp"
#include "rotgraph/fine_graph.hpp"
#include "rotgraph/gallery.hpp"
#include "rotgraph/io.hpp"
#include "rotgraph/rotation_set.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
namespace ts = testing_support;
using nlohmann::json;
using namespace rotgraph;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Options {
  std::string cli;
  fs::path expect;
  fs::path work = "acceptance_work";
  std::set<int> only;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Maps whose lift is isotopic to the identity, where the estimator's properties apply.
std::vector<std::string> identity_isotopic_entries() {
  std::vector<std::string> out;
  for (const auto& e : gallery_entries())
    if (gallery_build(e.name).linear_part() == IntMatrix::identity()) out.push_back(e.name);
  return out;
}

double max_vertex_gap(const ConvexRegion& a, const ConvexRegion& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, norm(a.vertices()[i] - b.vertices()[i]));
  return worst;
}

Outcome c1_translation() {
  auto est = mz_estimate(translation({0.3, 0.7}), 100, 16);
  double d = est.hull.empty() ? INFINITY : norm(est.hull.vertices()[0] - Vec2{0.3, 0.7});
  return {est.hull.size() == 1 && d <= 1e-9, fmt("vertices=%zu distance=%.3g", est.hull.size(), d)};
}

Outcome c2_mz_properties() {
  bool ok = true;
  double deck_worst = 0.0, power_worst = 0.0, conj_worst = 0.0;
  std::string worst_name;
  const std::int64_t n = 500;
  for (const auto& name : identity_isotopic_entries()) {
    LiftedMap f = gallery_build(name);
    const std::int64_t nd = 200;
    auto base = mz_estimate(f, nd, 16);
    for (IntVec2 p : {IntVec2{1, 0}, IntVec2{-2, 3}}) {
      auto shifted = mz_estimate(deck_adjust(f, p), nd, 16);
      double g = max_vertex_gap(shifted.hull, base.hull.translated(p.to_real()));
      deck_worst = std::max(deck_worst, g);
      ok = ok && g <= nd * 1e-12;
    }
    for (int q : {2, 3}) {
      auto lhs = mz_estimate(power(f, q), 100, 16);
      auto rhs = mz_estimate(f, 100 * q, 16);
      double g = max_vertex_gap(lhs.hull, rhs.hull.scaled(q));
      power_worst = std::max(power_worst, g);
      ok = ok && g <= 1e-9;
    }
    auto full = mz_estimate(f, n, 64);
    for (IntMatrix a : {IntMatrix{1, 1, 0, 1}, IntMatrix{0, -1, 1, 0}}) {
      auto conj = mz_estimate(conjugate(f, a), n, 64);
      double g = hausdorff(conj.hull, full.hull.transformed(a));
      if (g > conj_worst) {
        conj_worst = g;
        worst_name = name;
      }
      ok = ok && g <= 0.05;
    }
  }
  return {ok, fmt("maps=%zu deck=%.3g power=%.3g conjugation=%.4f (%s)", identity_isotopic_entries().size(),
                  deck_worst, power_worst, conj_worst, worst_name.c_str())};
}

Outcome c3_shear() {
  LiftedMap f = gallery_build("shear_segment");
  auto est = mz_estimate(f, 500, 64);
  std::vector<Vec2> seg = {{0, 0}, {1, 0}};
  double h = hausdorff(est.hull, ConvexRegion::hull_of(seg));
  auto rep = classify(f);
  CrossCheckOptions opts;
  opts.schedule = {1, 2, 5, 10, 20, 50, 100, 200};
  auto cc = cross_check(f, rep, horizontal_curve(Rational(1, 3)), opts);
  bool full = cc.samples.size() == opts.schedule.size();
  bool ok = h <= 0.02 && rep.verdict == Verdict::EllipticConsistent && full && cc.max_value <= 2;
  return {ok, fmt("hausdorff=%.4f verdict=%s crossings(n<=200) max=%lld over %zu samples", h,
                  to_string(rep.verdict).c_str(), static_cast<long long>(cc.max_value), cc.samples.size())};
}

Outcome c4_hyperbolic() {
  LiftedMap f = gallery_build("mz_interior");
  auto rep = classify(f);
  double area = rep.estimate ? rep.estimate->hull.area() : 0.0;
  auto cc = cross_check(f, rep, horizontal_curve(Rational(1, 3)));
  double upper = cc.translation_length ? cc.translation_length->upper : INFINITY;
  double budget = rep.area_budget.value_or(0.0);
  bool ok = rep.verdict == Verdict::Hyperbolic && area > 0.05 && budget >= upper - 0.05;
  return {ok, fmt("verdict=%s area=%.4f budget=%.4f translation_upper=%.4f", to_string(rep.verdict).c_str(), area,
                  budget, upper)};
}

Outcome c5_anosov() {
  IntMatrix a{2, 1, 1, 1};
  auto rep = classify(linear(a));
  ts::oracle::FareyBox box(50);
  auto from = box.distances_from({1, 0});
  double worst = INFINITY;
  bool ok = rep.verdict == Verdict::Hyperbolic && rep.route == Route::AnosovTrace;
  IntVec2 w{1, 0};
  IntMatrix an = IntMatrix::identity();
  int oracle_checked = 0;
  for (int n = 1; n <= 20; ++n) {
    an = a * an;
    IntVec2 img = an * w;
    std::int64_t d = farey_distance(w, img);
    if (std::llabs(img.x) <= 50 && std::llabs(img.y) <= 50) {
      ok = ok && from[box.index(img)] == d;
      ++oracle_checked;
    }
    worst = std::min(worst, static_cast<double>(d) / n);
  }
  ok = ok && worst >= 0.4;
  return {ok, fmt("verdict=%s min d/n=%.3f (oracle-checked %d)", to_string(rep.verdict).c_str(), worst,
                  oracle_checked)};
}

Outcome c6_crossing() {
  std::mt19937_64 rng(606);
  int agreed = 0, compared = 0, skipped = 0;
  for (int i = 0; compared < 100 && i < 2000; ++i) {
    PLCurve a = ts::random_curve(rng, ts::random_primitive(rng, 3), 1 + i % 4);
    PLCurve b = ts::random_curve(rng, ts::random_primitive(rng, 4), 1 + i % 5);
    if (!ts::oracle::simple(a) || !ts::oracle::simple(b) || !ts::oracle::intersection_count(a, b)) {
      ++skipped;
      continue;
    }
    std::int64_t c;
    try {
      c = crossing_number(a, b);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonGeneric) throw;
      ++skipped;
      continue;
    }
    ++compared;
    agreed += static_cast<std::size_t>(c) == ts::oracle::elevations_met(a, b);
  }
  return {compared == 100 && agreed == compared, fmt("agreed %d/%d (skipped %d non-generic)", agreed, compared, skipped)};
}

Outcome c7_surgery() {
  std::mt19937_64 rng(707);
  int valid = 0, done = 0, oracle_ok = 0;
  std::size_t max_i = 0;
  for (int i = 0; done < 100 && i < 5000; ++i) {
    PLCurve a = ts::random_curve(rng, ts::random_primitive(rng, 3), 1 + i % 4, 0.4, 16);
    PLCurve b = ts::random_curve(rng, ts::random_primitive(rng, 3), 1 + i % 5, 0.4, 16);
    if (!ts::oracle::simple(a) || !ts::oracle::simple(b)) continue;
    auto n = ts::oracle::intersection_count(a, b);
    if (!n || *n > 20) continue;
    try {
      if (transverse_count(a, b) != *n) return {false, "transverse count disagrees with the oracle"};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonGeneric) throw;
      continue;  // touching pair, not transverse
    }
    auto d = upper_bound_by_intersection(a, b);
    ++done;
    max_i = std::max(max_i, *n);
    if (!d.certificate) continue;
    const auto& p = *d.certificate;
    bool ok = verify_path(p, &b, &a).valid && p.bound() <= 2 * static_cast<std::int64_t>(*n) + 2;
    valid += ok;
    bool oracle = p.curves.front() == b && p.curves.back() == a;
    for (const auto& c : p.curves) oracle = oracle && c.essential() && ts::oracle::simple(c);
    for (std::size_t k = 0; oracle && k + 1 < p.curves.size(); ++k) {
      auto m = ts::oracle::intersection_count(p.curves[k], p.curves[k + 1]);
      oracle = m && *m <= 1;
    }
    oracle_ok += oracle;
  }
  return {done == 100 && valid == done && oracle_ok == done,
          fmt("pairs=%d valid=%d oracle-valid=%d max intersections=%zu", done, valid, oracle_ok, max_i)};
}

Outcome c8_farey() {
  ts::oracle::FareyBox box(50);
  const auto& nodes = box.nodes();
  std::size_t checked = 0, mismatched = 0;
  for (IntVec2 s : {IntVec2{1, 0}, IntVec2{0, 1}, IntVec2{3, 7}, IntVec2{13, -8}, IntVec2{50, 49}}) {
    auto d = box.distances_from(s);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      ++checked;
      mismatched += farey_distance(s, nodes[i]) != d[i];
    }
  }
  std::size_t adj_checked = 0, adj_bad = 0;
  for (std::size_t i = 0; i < nodes.size(); i += 7)
    for (std::size_t j = 0; j < nodes.size(); j += 3) {
      ++adj_checked;
      bool expect = std::llabs(det(nodes[i], nodes[j])) == 1;
      adj_bad += farey_adjacent(nodes[i], nodes[j]) != expect;
    }
  return {mismatched == 0 && adj_bad == 0, fmt("classes=%zu distances checked=%zu mismatched=%zu adjacency checked=%zu bad=%zu",
                                               nodes.size(), checked, mismatched, adj_checked, adj_bad)};
}

Outcome c9_lifting() {
  std::mt19937_64 rng(909);
  int pairs = 0, ok = 0;
  for (int i = 0; pairs < 50 && i < 5000; ++i) {
    auto pr = ts::random_adjacent_pair(rng);
    if (!pr) continue;
    ++pairs;
    bool good = adjacent(pr->first, pr->second);
    for (std::int64_t n : {2, 3}) {
      PLCurve la = lift_to_cover(pr->first, n).curve, lb = lift_to_cover(pr->second, n).curve;
      auto m = ts::oracle::intersection_count(la, lb);
      good = good && adjacent(la, lb) && m && *m <= 1;
    }
    ok += good;
  }
  return {pairs == 50 && ok == pairs, fmt("pairs=%d adjacent in T_2 and T_3: %d", pairs, ok)};
}

Outcome c10_denjoy_parabolic() {
  LiftedMap f = gallery_build("denjoy_parabolic");
  auto diag = convergence_diagnostics(f, {100, 200, 400, 800, 1600, 3200}, 16);
  bool decreasing = true;
  std::string diams;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    diams += fmt("%s%.4f", i ? "," : "", diag[i].hull.diameter());
    if (i > 0) decreasing = decreasing && diag[i].hull.diameter() <= diag[i - 1].hull.diameter();
  }
  double final_diam = diag.back().hull.diameter();

  ClassifyParams params;
  params.trap_n_max = 2;
  params.trap_samples = 64;
  auto rep = classify(f, params);
  CrossCheckOptions opts;
  opts.schedule = {10, 30, 100, 300};
  opts.res = 16;
  opts.max_chord = 0.002;
  rep.cross_check = cross_check(f, rep, horizontal_curve(Rational(1, 2)), opts);
  std::int64_t reached = rep.cross_check->max_value;
  std::string series;
  for (const auto& s : rep.cross_check->samples)
    series += fmt("%s%lld:%lld", series.empty() ? "" : ",", static_cast<long long>(s.n), static_cast<long long>(s.value));
  bool ok = final_diam <= 0.1 && decreasing && reached >= 5 && rep.verdict == Verdict::Undetermined &&
            rep.cross_check.has_value();
  return {ok, fmt("diameters=[%s] verdict=%s crossings=[%s]", diams.c_str(), to_string(rep.verdict).c_str(),
                  series.c_str())};
}

Outcome c11_denjoy_flow() {
  LiftedMap f = gallery_build("denjoy_irrational_flow");
  ClassifyParams params;
  auto rep = classify(f, params);
  if (!rep.estimate) return {false, "no estimate"};
  const auto& sh = rep.estimate->shape;
  Vec2 dir = sh.end_b - sh.end_a;
  double alpha = DenjoyParams{}.alpha;
  Vec2 want = Vec2{alpha, 1.0} / norm(Vec2{alpha, 1.0});
  double dev = INFINITY;
  if (norm(dir) > 0) {
    Vec2 u = dir / norm(dir);
    dev = std::min(norm(u - want), norm(u + want));
  }
  double origin = rep.estimate->hull.distance_to({0, 0});
  bool ok = rep.verdict == Verdict::ParabolicConsistent && sh.kind == ShapeKind::Segment && dev <= 0.02 &&
            origin <= params.thresholds.segment_width;
  return {ok, fmt("verdict=%s shape=%s direction deviation=%.4f distance to origin=%.2g",
                  to_string(rep.verdict).c_str(), to_string(sh.kind).c_str(), dev, origin)};
}

Outcome c12_elliptic_certificate() {
  auto rep = classify(gallery_build("annulus_attractor"));
  bool ok = rep.verdict == Verdict::EllipticCertified && rep.certificate && rep.certificate->n == 1 &&
            rep.certificate->margin > 0.0;
  return {ok, fmt("verdict=%s n=%lld margin=%.3g", to_string(rep.verdict).c_str(),
                  rep.certificate ? static_cast<long long>(rep.certificate->n) : -1LL,
                  rep.certificate ? rep.certificate->margin : 0.0)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_version_comment(const std::string& svg) {
  std::stringstream in(svg);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("<!--", 0) != 0) out += line + "\n";
  return out;
}

Outcome c13_determinism(const Options& o) {
  if (o.cli.empty()) return {false, "no --cli given"};
  struct Run {
    std::string name;
    std::string args;
  };
  const std::vector<Run> runs = {
      {"rotset_translation", "rotset --gallery translation --v 0.3,0.7 -n 100 --grid 16 --svg"},
      {"rotset_interior", "rotset --gallery mz_interior -n 200 --grid 32 --svg --cloud --schedule 50,100,200"},
      {"classify_anosov", "classify --gallery anosov"},
      {"classify_shear", "classify --gallery shear_segment -n 200 --grid 24 --schedule 1,5,20"},
      {"crossing_shear", "crossing --gallery shear_segment --curve-a v:1/3 --schedule 1,2,4"},
      {"distance", "distance --curve-a h:0 --curve-b line:1,2"},
      {"gallery_list", "gallery list"},
      {"gallery_build", "gallery build anosov"},
  };
  int identical = 0, failed = 0, files = 0;
  std::string bad;
  for (const auto& r : runs) {
    fs::path dirs[2] = {o.work / "det" / (r.name + "_a"), o.work / "det" / (r.name + "_b")};
    for (const auto& d : dirs) {
      fs::remove_all(d);
      fs::create_directories(d);
      std::string cmd = "\"" + o.cli + "\" " + r.args + " --out \"" + d.string() + "\" > \"" +
                        (d / "stdout.txt").string() + "\" 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        ++failed;
        bad += " " + r.name + "(exit)";
      }
    }
    if (r.name == "distance") {
      for (const auto& d : dirs) {
        std::string cmd = "\"" + o.cli + "\" verify-certificate \"" + (d / "distance.json").string() + "\" > \"" +
                          (d.string() + ".verify.log") + "\" 2>&1";
        if (std::system(cmd.c_str()) != 0) {
          ++failed;
          bad += " verify(exit)";
        }
      }
    }
    bool same = true;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      ++files;
      fs::path other = dirs[1] / entry.path().filename();
      std::string x = slurp(entry.path()), y = fs::exists(other) ? slurp(other) : std::string("\x01missing");
      if (entry.path().extension() == ".svg") {
        x = strip_version_comment(x);
        y = strip_version_comment(y);
      }
      if (x != y) {
        same = false;
        bad += " " + r.name + "/" + entry.path().filename().string();
      }
    }
    identical += same;
  }
  bool ok = failed == 0 && identical == static_cast<int>(runs.size());
  return {ok, fmt("commands=%zu identical=%d files=%d%s%s", runs.size(), identical, files, bad.empty() ? "" : " differing:",
                  bad.c_str())};
}

Options parse_args(int argc, char** argv) {
  Options o;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    auto value = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "missing value for " << a << "\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (a == "--cli")
      o.cli = value();
    else if (a == "--expect")
      o.expect = value();
    else if (a == "--work")
      o.work = value();
    else if (a == "--only") {
      std::stringstream ss(value());
      std::string item;
      while (std::getline(ss, item, ',')) o.only.insert(std::stoi(item));
    } else {
      std::cerr << "usage: acceptance [--cli PATH] [--expect FILE] [--only 1,2] [--work DIR]\n";
      std::exit(2);
    }
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  Options o = parse_args(argc, argv);
  std::map<int, std::string> known;
  if (!o.expect.empty()) {
    json j = json::parse(slurp(o.expect));
    for (const auto& [k, v] : j.value("known_failures", json::object()).items()) known[std::stoi(k)] = v;
  }
  fs::create_directories(o.work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"translation exactness", c1_translation},
      {"rotation set properties", c2_mz_properties},
      {"shear segment", c3_shear},
      {"hyperbolic route", c4_hyperbolic},
      {"anosov route", c5_anosov},
      {"crossing number exactness", c6_crossing},
      {"surgery certificates", c7_surgery},
      {"farey distances", c8_farey},
      {"adjacency lifting", c9_lifting},
      {"denjoy parabolic signature", c10_denjoy_parabolic},
      {"irrational segment route", c11_denjoy_flow},
      {"elliptic certificate", c12_elliptic_certificate},
      {"determinism", [&] { return c13_determinism(o); }},
  };

  int unexpected = 0, passed = 0, ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    if (!o.only.empty() && !o.only.count(id)) continue;
    ++ran;
    auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    passed += r.pass;
    std::string note;
    if (!r.pass && known.count(id))
      note = " [known: " + known[id] + "]";
    else if (!r.pass)
      ++unexpected;
    else if (known.count(id))
      note = " [listed as known failure but passed]";
    std::printf("%s %2d %s: %s (%.1fs)%s\n", r.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                r.detail.c_str(), secs, note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", passed, ran);
  return unexpected == 0 ? 0 : 1;
}
