#include <doctest.h>

#include <random>

#include "rotgraph/errors.hpp"
#include "rotgraph/fine_graph.hpp"
#include "rotgraph/gallery.hpp"
#include "support.hpp"

using namespace rotgraph;
namespace ts = testing_support;

namespace {

bool oracle_adjacent(const PLCurve& a, const PLCurve& b) {
  auto n = ts::oracle::intersection_count(a, b);
  return n && *n <= 1;
}

void check_path_with_oracle(const CertifiedPath& p, const PLCurve& from, const PLCurve& to) {
  REQUIRE(!p.curves.empty());
  CHECK(p.curves.front() == from);
  CHECK(p.curves.back() == to);
  for (const auto& c : p.curves) {
    CHECK(c.essential());
    CHECK(ts::oracle::simple(c));
  }
  for (std::size_t i = 0; i + 1 < p.curves.size(); ++i) CHECK(oracle_adjacent(p.curves[i], p.curves[i + 1]));
}

}  // namespace

TEST_CASE("adjacency") {
  CHECK(adjacent(horizontal_curve(0), vertical_curve(0)));
  CHECK(adjacent(horizontal_curve(0), horizontal_curve(Rational(1, 2))));
  CHECK_FALSE(adjacent(horizontal_curve(0), straight_curve({1, 2})));
}

TEST_CASE("distance between the (1,0) and (1,2) straight curves") {
  PLCurve a = horizontal_curve(0), b = straight_curve({1, 2}, {Rational(1, 7), Rational(0)});
  auto d = upper_bound_by_intersection(a, b);
  CHECK(d.intersections == 2);
  CHECK(d.lower == 2);
  CHECK(d.upper == 2);
  REQUIRE(d.certificate);
  CHECK(verify_path(*d.certificate, &b, &a).valid);
  check_path_with_oracle(*d.certificate, b, a);
}

TEST_CASE("surgery reduces intersections on random pairs") {
  std::mt19937_64 rng(23);
  int done = 0;
  for (int i = 0; i < 200 && done < 25; ++i) {
    PLCurve a = ts::random_curve(rng, ts::random_primitive(rng, 2), 2 + i % 3, 0.4, 12);
    PLCurve b = ts::random_curve(rng, ts::random_primitive(rng, 3), 2 + i % 4, 0.4, 12);
    auto n = ts::oracle::intersection_count(a, b);
    if (!n || *n < 2 || *n > 12) continue;
    std::size_t count;
    try {
      count = transverse_count(a, b);
    } catch (const Error&) {
      continue;  // tangential contact
    }
    REQUIRE(count == *n);
    auto step = surgery_step_detailed(a, b);
    CHECK(step.count_after < step.count_before);
    CHECK(ts::oracle::simple(step.curve));
    auto d = upper_bound_by_intersection(a, b);
    CHECK(d.upper <= 2 * static_cast<std::int64_t>(count) + 2);
    CHECK(d.lower <= d.upper);
    REQUIRE(d.certificate);
    check_path_with_oracle(*d.certificate, b, a);
    ++done;
  }
  CHECK(done >= 20);
}

TEST_CASE("tampered paths are rejected with the failing step") {
  PLCurve a = horizontal_curve(0), b = straight_curve({1, 3});
  CertifiedPath p{{b, a}};
  auto chk = verify_path(p);
  CHECK_FALSE(chk.valid);
  REQUIRE(chk.failing_step);
  CHECK(*chk.failing_step == 0);
}

TEST_CASE("translation length bounds") {
  LiftedMap anosov = gallery_build("anosov");
  TranslationLengthOptions opts;
  opts.schedule = {1, 2, 4, 8};
  auto tl = translation_length_bounds(anosov, horizontal_curve(0), opts);
  CHECK(tl.lower > 0.0);
  CHECK(tl.lower <= tl.upper);
  REQUIRE(tl.trace.size() == 4);
  CHECK(tl.trace[0].method == "intersection_formula");

  opts.schedule = {1, 2, 4};
  auto sh = translation_length_bounds(gallery_build("shear_segment"), horizontal_curve(Rational(1, 3)), opts);
  CHECK(sh.lower == 0.0);
  for (const auto& r : sh.trace) CHECK(r.method == "crossing");
}

TEST_CASE("annulus traps") {
  LiftedMap f = gallery_build("annulus_attractor");
  auto cert = annulus_trap_certificate(f, horizontal_curve(Rational(1, 4)), horizontal_curve(Rational(3, 4)), 5, 64);
  REQUIRE(cert);
  CHECK(cert->n == 1);
  CHECK(cert->margin > kTrapMargin);
  CHECK(cert->label == "numeric evidence");
  // The complementary annulus around y = 0 is repelling.
  CHECK_FALSE(annulus_trap_certificate(f, horizontal_curve(Rational(3, 4)), horizontal_curve(Rational(1, 4)), 3, 64));
  CHECK_FALSE(annulus_trap_certificate(translation({0.0, 0.5}), horizontal_curve(Rational(1, 4)),
                                       horizontal_curve(Rational(3, 4)), 3, 16));
  CHECK_THROWS_AS(annulus_trap_certificate(f, horizontal_curve(0), vertical_curve(0), 1, 4), Error);
}
