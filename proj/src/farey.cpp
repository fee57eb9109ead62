#include "rotgraph/farey.hpp"

#include <cstdlib>
#include <deque>

#include "rotgraph/errors.hpp"

namespace rotgraph {

namespace {

void require_primitive(IntVec2 v) {
  if (!is_primitive(v)) fail(ErrorCode::Domain, "Farey vertex must be a primitive class");
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

bool farey_adjacent(IntVec2 s, IntVec2 t) { return std::llabs(det(s, t)) == 1; }

bool same_slope(IntVec2 s, IntVec2 t) { return s == t || s == -t; }

std::vector<IntVec2> farey_ladder(IntVec2 target) {
  // Vector (p, q) stands for the fraction p/q; (1, 0) is infinity.
  if (target.y < 0) target = -target;
  std::vector<IntVec2> out{{1, 0}};
  if (target.y == 0) return out;
  std::int64_t n0 = floor_div(target.x, target.y);
  IntVec2 left{n0, 1}, right{n0 + 1, 1};
  out.push_back(left);
  out.push_back(right);
  if (target == left) return out;
  for (;;) {
    IntVec2 mid = left + right;
    out.push_back(mid);
    if (mid == target) return out;
    // target < mid as fractions iff target.x * mid.y < mid.x * target.y
    if (target.x * mid.y < mid.x * target.y)
      right = mid;
    else
      left = mid;
  }
}

std::int64_t farey_distance(IntVec2 s, IntVec2 t) {
  require_primitive(s);
  require_primitive(t);
  if (same_slope(s, t)) return 0;
  if (farey_adjacent(s, t)) return 1;
  IntVec2 target = sl2_to_first_axis(s) * t;
  // Breadth-first search from infinity over the ladder; it contains a geodesic.
  std::vector<IntVec2> verts = farey_ladder(target);
  std::vector<std::int64_t> dist(verts.size(), -1);
  std::deque<std::size_t> queue{0};
  dist[0] = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    if (same_slope(verts[u], target)) return dist[u];
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (dist[v] < 0 && farey_adjacent(verts[u], verts[v])) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  fail(ErrorCode::Internal, "farey_distance: target not reached");
}

}  // namespace rotgraph
