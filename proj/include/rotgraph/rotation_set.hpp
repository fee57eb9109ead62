#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotgraph/hull.hpp"
#include "rotgraph/torus_map.hpp"

namespace rotgraph {

struct ShapeThresholds {
  double point_diameter = 1e-3;   // Point when diameter <= this
  double segment_width = 5e-3;    // Segment when min-width <= this
  double interior_area = 1e-4;    // Interior needs area >= this
  std::int64_t max_denominator = 1000;
  double partial_quotient_cutoff = 1e6;
  std::int64_t rational_point_denominator = 100;
  double interval_length = 0.05;  // twist-interval length separating hyperbolic from singleton

  friend bool operator==(const ShapeThresholds&, const ShapeThresholds&) = default;
};

struct SlopeLabel {
  bool rational = false;
  IntVec2 direction;  // primitive integer direction when rational
  int terms = 0;      // continued-fraction terms inspected
};

// Label for the direction d by truncated continued fractions.
SlopeLabel label_direction(Vec2 d, const ShapeThresholds& th);

enum class ShapeKind { Point, Segment, Interior, Undetermined };
std::string to_string(ShapeKind k);

struct Shape {
  ShapeKind kind = ShapeKind::Undetermined;
  double diameter = 0.0;
  double min_width = 0.0;
  double area = 0.0;
  // Segment: the two farthest hull vertices and the direction label.
  Vec2 end_a, end_b;
  SlopeLabel slope;
};

Shape classify_shape(const ConvexRegion& hull, const ShapeThresholds& th);

struct RotSetEstimate {
  ConvexRegion hull;
  std::int64_t n = 0;
  int grid_res = 0;
  Shape shape;
  ShapeThresholds thresholds;
  struct Step {
    std::int64_t n;
    std::optional<double> delta;  // Hausdorff distance to the previous hull
  };
  std::vector<Step> diagnostics;
};

Vec2 pointwise_rotation(const LiftedMap& f, Vec2 x, std::int64_t n);

// Displacements (F^n(x) - x)/n at the cell centers of a grid_res x grid_res grid,
// row-major in (i, j) with x = (i + 1/2)/g, y = (j + 1/2)/g.
std::vector<Vec2> displacement_field_serial(const LiftedMap& f, std::int64_t n, int grid_res);
std::vector<Vec2> displacement_field_parallel(const LiftedMap& f, std::int64_t n, int grid_res);

RotSetEstimate mz_estimate(const LiftedMap& f, std::int64_t n, int grid_res, const ShapeThresholds& th = {});

struct DiagnosticEntry {
  std::int64_t n;
  ConvexRegion hull;
  std::optional<double> delta;
};

std::vector<DiagnosticEntry> convergence_diagnostics(const LiftedMap& f, const std::vector<std::int64_t>& schedule,
                                                     int grid_res);

struct RotInterval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Fiber-direction displacement rates of the cyclic lift over the lattice (i/s, j/s) of [0,1)^2.
RotInterval twist_rotation_interval(const CyclicLift& lift, std::int64_t n, int samples);

}  // namespace rotgraph
