#pragma once

#include <span>
#include <vector>

#include "rotgraph/geometry.hpp"

namespace rotgraph {

// Convex polygon with counterclockwise vertices starting at the lexicographic minimum.
// One vertex is a point, two a segment.
class ConvexRegion {
public:
  ConvexRegion() = default;

  static ConvexRegion hull_of(std::span<const Vec2> points);
  // Vertices must already be in canonical order; used when reading back CSV output.
  static ConvexRegion from_vertices(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  bool empty() const { return vertices_.empty(); }
  std::size_t size() const { return vertices_.size(); }

  double area() const;
  double diameter() const;
  double min_width() const;
  double distance_to(Vec2 p) const;  // 0 inside
  bool contains(Vec2 p, double slack) const;

  ConvexRegion translated(Vec2 v) const;
  ConvexRegion scaled(double s) const;
  ConvexRegion transformed(const IntMatrix& a) const;

private:
  explicit ConvexRegion(std::vector<Vec2> v) : vertices_(std::move(v)) {}
  std::vector<Vec2> vertices_;
};

double hausdorff(const ConvexRegion& p, const ConvexRegion& q);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

}  // namespace rotgraph
