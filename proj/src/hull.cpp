#include "rotgraph/hull.hpp"

#include <algorithm>
#include <cmath>

#include "rotgraph/errors.hpp"

namespace rotgraph {

namespace {

constexpr double kCollinearTol = 1e-12;

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// True when o -> a -> b does not make a strict left turn, relative to the edge lengths.
bool not_left_turn(Vec2 o, Vec2 a, Vec2 b) {
  Vec2 u = a - o, v = b - o;
  double c = cross(u, v);
  return c <= kCollinearTol * norm(u) * norm(v);
}

}  // namespace

ConvexRegion ConvexRegion::hull_of(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  for (Vec2 p : pts)
    if (!is_finite(p)) fail(ErrorCode::Domain, "hull: non-finite point");
  std::sort(pts.begin(), pts.end(), lex_less);
  if (pts.empty()) return {};
  double scale = 0.0;
  for (Vec2 p : pts) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  // Merge points that agree to rounding noise.
  double merge = kCollinearTol * std::max(1.0, scale);
  std::vector<Vec2> uniq;
  for (Vec2 p : pts)
    if (uniq.empty() || norm(p - uniq.back()) > merge) uniq.push_back(p);
  if (uniq.size() <= 1) return ConvexRegion(std::move(uniq));
  if (uniq.size() > 2 && norm(uniq.back() - uniq.front()) <= merge) uniq.pop_back();

  std::vector<Vec2> h(2 * uniq.size());
  std::size_t k = 0;
  for (Vec2 p : uniq) {
    while (k >= 2 && not_left_turn(h[k - 2], h[k - 1], p)) --k;
    h[k++] = p;
  }
  for (std::size_t i = uniq.size() - 1, t = k + 1; i-- > 0;) {
    Vec2 p = uniq[i];
    while (k >= t && not_left_turn(h[k - 2], h[k - 1], p)) --k;
    h[k++] = p;
  }
  h.resize(k - 1);
  if (h.size() == 2 && norm(h[0] - h[1]) <= merge) h.resize(1);
  return ConvexRegion(std::move(h));
}

ConvexRegion ConvexRegion::from_vertices(std::vector<Vec2> vertices) { return hull_of(vertices); }

double ConvexRegion::area() const {
  if (vertices_.size() < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) s += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  return 0.5 * s;
}

double ConvexRegion::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) d = std::max(d, norm(vertices_[i] - vertices_[j]));
  return d;
}

double ConvexRegion::min_width() const {
  std::size_t n = vertices_.size();
  if (n < 3) return 0.0;
  double best = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 a = vertices_[i], e = vertices_[(i + 1) % n] - a;
    double len = norm(e), far = 0.0;
    for (Vec2 v : vertices_) far = std::max(far, cross(e, v - a) / len);
    best = std::min(best, far);
  }
  return best;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 e = b - a;
  double l2 = dot(e, e);
  if (l2 == 0.0) return norm(p - a);
  double t = std::clamp(dot(p - a, e) / l2, 0.0, 1.0);
  return norm(p - (a + t * e));
}

double ConvexRegion::distance_to(Vec2 p) const {
  std::size_t n = vertices_.size();
  if (n == 0) fail(ErrorCode::Domain, "distance to an empty region");
  if (n == 1) return norm(p - vertices_[0]);
  if (n >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i)
      inside = cross(vertices_[(i + 1) % n] - vertices_[i], p - vertices_[i]) >= 0.0;
    if (inside) return 0.0;
  }
  double d = INFINITY;
  for (std::size_t i = 0; i < n; ++i) d = std::min(d, point_segment_distance(p, vertices_[i], vertices_[(i + 1) % n]));
  return d;
}

bool ConvexRegion::contains(Vec2 p, double slack) const { return distance_to(p) <= slack; }

ConvexRegion ConvexRegion::translated(Vec2 v) const {
  std::vector<Vec2> out = vertices_;
  for (auto& p : out) p += v;
  return ConvexRegion(std::move(out));
}

ConvexRegion ConvexRegion::scaled(double s) const {
  std::vector<Vec2> out = vertices_;
  for (auto& p : out) p = s * p;
  return s > 0 ? ConvexRegion(std::move(out)) : hull_of(out);
}

ConvexRegion ConvexRegion::transformed(const IntMatrix& a) const {
  std::vector<Vec2> out = vertices_;
  for (auto& p : out) p = a * p;
  return hull_of(out);
}

double hausdorff(const ConvexRegion& p, const ConvexRegion& q) {
  if (p.empty() || q.empty()) fail(ErrorCode::Domain, "hausdorff: empty region");
  // For convex polygons the farthest point of one from the other is attained at a vertex.
  double d = 0.0;
  for (Vec2 v : p.vertices()) d = std::max(d, q.distance_to(v));
  for (Vec2 v : q.vertices()) d = std::max(d, p.distance_to(v));
  return d;
}

}  // namespace rotgraph
