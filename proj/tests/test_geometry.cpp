#include <doctest.h>

#include <cmath>
#include <random>

#include "rotgraph/errors.hpp"
#include "rotgraph/geometry.hpp"
#include "rotgraph/hull.hpp"
#include "rotgraph/profile.hpp"
#include "rotgraph/rational.hpp"

using namespace rotgraph;

TEST_CASE("integer matrices") {
  IntMatrix a{2, 1, 1, 1};
  CHECK(a.det() == 1);
  CHECK(a.trace() == 3);
  CHECK(a * a.inverse() == IntMatrix::identity());
  CHECK(a.power(3) == a * a * a);
  CHECK(a.power(-2) == a.inverse() * a.inverse());
  CHECK(a.power(0).is_identity());
  CHECK_THROWS_AS((IntMatrix{2, 0, 0, 1}).inverse(), Error);
  CHECK(a.to_string() == "[[2,1],[1,1]]");

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> d(-40, 40);
  for (int i = 0; i < 200; ++i) {
    IntVec2 w{d(rng), d(rng)};
    if (w.is_zero() || !is_primitive(w)) continue;
    IntMatrix c = sl2_to_first_axis(w);
    CHECK(c.det() == 1);
    CHECK(c * w == IntVec2{1, 0});
  }
  CHECK(gcd(-12, 18) == 6);
  CHECK_FALSE(is_primitive({4, 6}));
}

TEST_CASE("convex hull canonical form") {
  std::vector<Vec2> pts = {{1, 1}, {0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}, {0.5, 0}};
  auto h = ConvexRegion::hull_of(pts);
  REQUIRE(h.size() == 4);
  CHECK(h.vertices()[0].x == 0.0);
  CHECK(h.vertices()[0].y == 0.0);
  CHECK(h.vertices()[1].x == 1.0);  // counterclockwise
  CHECK(h.area() == doctest::Approx(1.0));
  CHECK(h.diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(h.min_width() == doctest::Approx(1.0));
  CHECK(h.distance_to({0.5, 0.5}) == 0.0);
  CHECK(h.distance_to({2.0, 0.5}) == doctest::Approx(1.0));
  CHECK(hausdorff(h, h.translated({0.3, 0.4})) == doctest::Approx(0.5));

  std::vector<Vec2> line = {{0, 0}, {0.5, 0.25}, {1, 0.5}};
  auto s = ConvexRegion::hull_of(line);
  CHECK(s.size() == 2);
  CHECK(s.area() == 0.0);
  std::vector<Vec2> one = {{0.3, 0.7}, {0.3, 0.7}};
  CHECK(ConvexRegion::hull_of(one).size() == 1);

  auto t = h.transformed(IntMatrix{1, 1, 0, 1});
  CHECK(t.area() == doctest::Approx(1.0));
}

TEST_CASE("rationals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK(format_rational(Rational(-3, 4)) == "-3/4");
  CHECK(limit_denominator(0.333333, 10) == Rational(1, 3));
  CHECK(limit_denominator(3.141592653589793, 100) == Rational(311, 99));
  CHECK(floor_to_int(Rational(-1, 3)) == -1);
  QVec2 r = reduce_mod_one({Rational(5, 4), Rational(-1, 4)});
  CHECK(r == QVec2(Rational(1, 4), Rational(3, 4)));
}

TEST_CASE("profiles") {
  Profile s{Sin2{}};
  CHECK(s(0.5) == doctest::Approx(1.0));
  CHECK(s(0.25) == doctest::Approx(0.5));
  CHECK(s(1.25) == doctest::Approx(s(0.25)));
  Profile ramp{AnnularRamp{0.25, 0.75}};
  CHECK(ramp.degree() == 1);
  CHECK(ramp(0.1) == 0.0);
  CHECK(ramp(0.5) == doctest::Approx(0.5));
  CHECK(ramp(1.9) == doctest::Approx(2.0));
  Profile tri{TriangleBump{0.5, 0.25, 2.0}};
  CHECK(tri(0.5) == doctest::Approx(2.0));
  CHECK(tri(0.1) == 0.0);
  Profile pl{PiecewiseLinearTable{{{0.0, 0.0}, {0.5, 1.0}}}};
  CHECK(pl(0.25) == doctest::Approx(0.5));
  CHECK(pl(0.75) == doctest::Approx(0.5));
  CHECK_THROWS_AS(Profile(TriangleBump{0.5, 0.0, 1.0}), Error);
  CHECK(s.kind() == "sin2");
}
