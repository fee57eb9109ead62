#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rotgraph/rational.hpp"
#include "rotgraph/torus_map.hpp"

namespace rotgraph {

// Closed PL curve on R^2/Z^2 stored as a lifted chain v_0..v_{k-1}; the chain closes at
// v_k = v_0 + w with w the homology class.
class PLCurve {
public:
  PLCurve(std::vector<QVec2> vertices, IntVec2 closing);
  // Chain given with its closing vertex v_k appended; throws Malformed unless v_k - v_0 is integral.
  static PLCurve from_closed_chain(std::vector<QVec2> chain);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<QVec2>& vertices() const { return vertices_; }
  const std::vector<Vec2>& approx() const { return approx_; }
  IntVec2 closing() const { return closing_; }
  bool essential() const { return !closing_.is_zero(); }

  // v_i for any integer i, continuing periodically: v_{i+k} = v_i + w.
  QVec2 vertex(std::int64_t i) const;
  Vec2 vertex_approx(std::int64_t i) const;
  mpz_class max_denominator() const;

  // Same torus curve with the chain started at vertex s.
  PLCurve rotated(std::int64_t s) const;
  PLCurve translated(IntVec2 t) const;

  friend bool operator==(const PLCurve& a, const PLCurve& b) {
    return a.closing_ == b.closing_ && a.vertices_ == b.vertices_;
  }

private:
  std::vector<QVec2> vertices_;
  std::vector<Vec2> approx_;
  IntVec2 closing_;
};

PLCurve straight_curve(IntVec2 cls, QVec2 base = {});
PLCurve horizontal_curve(const Rational& height);
PLCurve vertical_curve(const Rational& abscissa);

IntVec2 homology_class(const PLCurve& c);
bool is_simple(const PLCurve& c);

struct Intersection {
  QVec2 point;    // reduced to [0,1)^2
  bool transverse;
  // Positions along the chains: segment index and parameter in [0, 1).
  std::size_t seg_a = 0;
  Rational param_a;
  std::size_t seg_b = 0;
  Rational param_b;
  // Lift relation: point on segment seg_a of a's base chain = point on segment seg_b of b's base chain + offset.
  IntVec2 offset;
  QVec2 lifted;   // the point on a's base chain
};

// Intersection points on the torus, ordered along a. Throws NonGeneric on overlapping segments.
std::vector<Intersection> intersections(const PLCurve& a, const PLCurve& b);
std::size_t transverse_count(const PLCurve& a, const PLCurve& b);  // throws NonGeneric on tangency

std::int64_t straight_class_intersection(IntVec2 u, IntVec2 v);

// Number of elevations of a met by one period of b's base lift.
std::int64_t crossing_number(const PLCurve& a, const PLCurve& b);

struct CoverLift {
  PLCurve curve;          // rescaled to unit coordinates of T_n
  IntVec2 cover_class;    // displacement d * w before rescaling
  std::int64_t traversals = 1;
};

CoverLift lift_to_cover(const PLCurve& c, std::int64_t n, IntVec2 elevation_offset = {});

inline constexpr std::int64_t kSnapDenominator = 1000000000;

struct ImageOptions {
  std::int64_t iterations = 1;  // image under F^iterations
  int res = 1;                  // samples per segment
  double max_chord = 0.0;       // subdivide until image chords are at most this long (0: off)
  int max_depth = 24;
  const PLCurve* reference = nullptr;  // checked for genericity against the image
};

PLCurve image_curve(const LiftedMap& f, const PLCurve& c, const ImageOptions& opts);
inline PLCurve image_curve(const LiftedMap& f, const PLCurve& c, int res) {
  ImageOptions o;
  o.res = res;
  return image_curve(f, c, o);
}

}  // namespace rotgraph
