#include "rotgraph/curve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>

#include "predicates.hpp"
#include "rotgraph/errors.hpp"

namespace rotgraph {

// ---------------------------------------------------------------------------
// Predicates

namespace detail {

Pt chain_point(const PLCurve& c, std::size_t idx, IntVec2 t) {
  const std::size_t k = c.size();
  IntVec2 shift = idx == k ? c.closing() + t : t;
  std::size_t i = idx == k ? 0 : idx;
  return {&c.vertices()[i], shift, c.approx()[i] + shift.to_real()};
}

namespace {

double max_abs(Vec2 a) { return std::max(std::abs(a.x), std::abs(a.y)); }

int sign(const Rational& q) { return sgn(q); }

int orient_exact(const Pt& a, const Pt& b, const Pt& c) {
  QVec2 A = a.exact();
  return sign(cross(b.exact() - A, c.exact() - A));
}

}  // namespace

int orient(const Pt& a, const Pt& b, const Pt& c) {
  Vec2 d1 = b.f - a.f, d2 = c.f - a.f;
  double det = d1.x * d2.y - d1.y * d2.x;
  double m = std::max({max_abs(a.f), max_abs(b.f), max_abs(c.f)});
  double sum = std::abs(d1.x) + std::abs(d1.y) + std::abs(d2.x) + std::abs(d2.y);
  double err = 2e-15 * m * sum + 1e-15 * (std::abs(d1.x * d2.y) + std::abs(d1.y * d2.x)) + 1e-28 * m * m + 1e-300;
  if (det > err) return 1;
  if (det < -err) return -1;
  return orient_exact(a, b, c);
}

Contact contact(const Pt& p1, const Pt& p2, const Pt& q1, const Pt& q2) {
  // Bounding-box rejection with a margin far above the approximation error.
  double m = 1e-9 * (1.0 + std::max({max_abs(p1.f), max_abs(p2.f), max_abs(q1.f), max_abs(q2.f)}));
  if (std::max(p1.f.x, p2.f.x) + m < std::min(q1.f.x, q2.f.x) || std::max(q1.f.x, q2.f.x) + m < std::min(p1.f.x, p2.f.x) ||
      std::max(p1.f.y, p2.f.y) + m < std::min(q1.f.y, q2.f.y) || std::max(q1.f.y, q2.f.y) + m < std::min(p1.f.y, p2.f.y))
    return Contact::None;
  int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  if (o1 == 0 && o2 == 0) {
    QVec2 a1 = p1.exact(), a2 = p2.exact(), b1 = q1.exact(), b2 = q2.exact();
    bool use_x = a1.x != a2.x;
    auto key = [use_x](const QVec2& v) -> const Rational& { return use_x ? v.x : v.y; };
    Rational lo_p = std::min(key(a1), key(a2)), hi_p = std::max(key(a1), key(a2));
    Rational lo_q = std::min(key(b1), key(b2)), hi_q = std::max(key(b1), key(b2));
    Rational lo = std::max(lo_p, lo_q), hi = std::min(hi_p, hi_q);
    if (lo < hi) return Contact::Overlap;
    if (lo == hi) return Contact::Point;
    return Contact::None;
  }
  if (o1 * o2 > 0) return Contact::None;
  int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o3 * o4 > 0) return Contact::None;
  return Contact::Point;
}

std::pair<Rational, Rational> contact_params(const Pt& p1, const Pt& p2, const Pt& q1, const Pt& q2) {
  QVec2 a1 = p1.exact(), a2 = p2.exact(), b1 = q1.exact(), b2 = q2.exact();
  QVec2 dp = a2 - a1, dq = b2 - b1;
  Rational den = cross(dp, dq);
  if (den != 0) {
    QVec2 r = b1 - a1;
    Rational lam = cross(r, dq) / den;
    Rational mu = cross(r, dp) / den;
    return {lam, mu};
  }
  // Collinear segments touching at one endpoint.
  auto param = [](const QVec2& s, const QVec2& e, const QVec2& x) -> Rational {
    return s.x != e.x ? Rational((x.x - s.x) / (e.x - s.x)) : Rational((x.y - s.y) / (e.y - s.y));
  };
  for (const QVec2* x : {&a1, &a2})
    if (*x == b1 || *x == b2) return {param(a1, a2, *x), param(b1, b2, *x)};
  fail(ErrorCode::Internal, "contact_params: no shared endpoint for collinear contact");
}

void candidate_translates(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2, std::vector<IntVec2>& out) {
  // The Minkowski difference [p1,p2] - [q1,q2] is the parallelogram spanned by these corners.
  const Vec2 c[4] = {p1 - q1, p1 - q2, p2 - q1, p2 - q2};
  const std::pair<int, int> edges[4] = {{0, 1}, {2, 3}, {0, 2}, {1, 3}};
  double minx = INFINITY, maxx = -INFINITY, scale = 1.0;
  for (Vec2 v : c) {
    minx = std::min(minx, v.x);
    maxx = std::max(maxx, v.x);
    scale = std::max(scale, max_abs(v));
  }
  scale = std::max({scale, max_abs(p1), max_abs(p2), max_abs(q1), max_abs(q2)});
  const double tol = 1e-9 * scale;
  for (double X = std::ceil(minx - tol); X <= maxx + tol; X += 1.0) {
    double ylo = INFINITY, yhi = -INFINITY;
    for (auto [i, j] : edges) {
      Vec2 a = c[i], b = c[j];
      if (std::min(a.x, b.x) > X + tol || std::max(a.x, b.x) < X - tol) continue;
      double dx = b.x - a.x;
      if (std::abs(dx) <= tol) {
        ylo = std::min({ylo, a.y, b.y});
        yhi = std::max({yhi, a.y, b.y});
      } else {
        double s = std::clamp((X - a.x) / dx, 0.0, 1.0);
        double y = a.y + s * (b.y - a.y);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
      }
    }
    if (ylo > yhi) continue;
    for (double Y = std::ceil(ylo - tol); Y <= yhi + tol; Y += 1.0)
      out.push_back({static_cast<std::int64_t>(X), static_cast<std::int64_t>(Y)});
  }
}

namespace {

struct Box {
  double x0, x1, y0, y1;
};

std::vector<Box> segment_boxes(const PLCurve& c) {
  std::vector<Box> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Vec2 a = c.vertex_approx(static_cast<std::int64_t>(i)), b = c.vertex_approx(static_cast<std::int64_t>(i) + 1);
    double m = 1e-9 * (1.0 + std::max(max_abs(a), max_abs(b)));
    out[i] = {std::min(a.x, b.x) - m, std::max(a.x, b.x) + m, std::min(a.y, b.y) - m, std::max(a.y, b.y) + m};
  }
  return out;
}

void cell_range(double lo, double hi, int g, std::vector<int>& cells) {
  cells.clear();
  double shift = std::floor(lo);
  long i0 = static_cast<long>(std::floor((lo - shift) * g));
  long i1 = static_cast<long>(std::floor((hi - shift) * g));
  if (i1 - i0 + 1 >= g) {
    for (int i = 0; i < g; ++i) cells.push_back(i);
    return;
  }
  for (long i = i0; i <= i1; ++i) cells.push_back(static_cast<int>(((i % g) + g) % g));
}

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> candidate_pairs(const PLCurve& a, const PLCurve& b, bool same) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  const std::size_t na = a.size(), nb = b.size();
  if (na * nb <= 4096) {
    for (std::uint32_t i = 0; i < na; ++i)
      for (std::uint32_t j = same ? i : 0; j < nb; ++j) out.emplace_back(i, j);
    return out;
  }
  std::vector<Box> ba = segment_boxes(a), bb = same ? std::vector<Box>{} : segment_boxes(b);
  const std::vector<Box>& bbr = same ? ba : bb;
  std::vector<double> extents;
  extents.reserve(na);
  for (const Box& x : ba) extents.push_back(std::max(x.x1 - x.x0, x.y1 - x.y0));
  std::nth_element(extents.begin(), extents.begin() + extents.size() / 2, extents.end());
  double med = std::max(extents[extents.size() / 2], 1e-6);
  int g = static_cast<int>(std::clamp(std::min(std::sqrt(static_cast<double>(na + nb)), 0.5 / med), 1.0, 512.0));
  std::vector<std::vector<std::uint32_t>> cells_a(static_cast<std::size_t>(g) * g), cells_b;
  if (!same) cells_b.resize(static_cast<std::size_t>(g) * g);
  std::vector<int> cx, cy;
  auto insert = [&](const std::vector<Box>& boxes, std::vector<std::vector<std::uint32_t>>& cells) {
    for (std::uint32_t i = 0; i < boxes.size(); ++i) {
      cell_range(boxes[i].x0, boxes[i].x1, g, cx);
      cell_range(boxes[i].y0, boxes[i].y1, g, cy);
      for (int x : cx)
        for (int y : cy) cells[static_cast<std::size_t>(x) * g + y].push_back(i);
    }
  };
  insert(ba, cells_a);
  if (!same) insert(bbr, cells_b);
  const auto& cb = same ? cells_a : cells_b;
  for (std::size_t cell = 0; cell < cells_a.size(); ++cell)
    for (std::uint32_t i : cells_a[cell])
      for (std::uint32_t j : cb[cell])
        if (!same || i <= j) out.emplace_back(i, j);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<QVec2, QVec2> local_rays(const PLCurve& c, std::size_t seg, int at) {
  const auto s = static_cast<std::int64_t>(seg);
  auto dir = [&](std::int64_t i) { return c.vertex(i + 1) - c.vertex(i); };
  if (at == 0) return {-dir(s - 1), dir(s)};
  if (at == 1) return {-dir(s), dir(s + 1)};
  QVec2 d = dir(s);
  return {-d, d};
}

namespace {

int half(const QVec2& v) { return (sgn(v.y) > 0 || (sgn(v.y) == 0 && sgn(v.x) > 0)) ? 0 : 1; }

// Strict angular order starting from the positive x axis.
int angle_cmp(const QVec2& u, const QVec2& v) {
  int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv ? -1 : 1;
  int c = sgn(cross(u, v));
  return -c;
}

}  // namespace

bool rays_cross(const std::pair<QVec2, QVec2>& a, const std::pair<QVec2, QVec2>& b) {
  struct Ray {
    const QVec2* v;
    bool from_a;
  };
  Ray r[4] = {{&a.first, true}, {&a.second, true}, {&b.first, false}, {&b.second, false}};
  std::sort(r, r + 4, [](const Ray& x, const Ray& y) { return angle_cmp(*x.v, *y.v) < 0; });
  for (int i = 0; i < 4; ++i) {
    const Ray& x = r[i];
    const Ray& y = r[(i + 1) % 4];
    if (x.from_a != y.from_a && angle_cmp(*x.v, *y.v) == 0)
      fail(ErrorCode::NonGeneric, "curves share a direction at a contact point");
  }
  return r[0].from_a != r[1].from_a && r[1].from_a != r[2].from_a && r[2].from_a != r[3].from_a;
}

}  // namespace detail

using detail::Contact;
using detail::Pt;

// ---------------------------------------------------------------------------
// PLCurve

PLCurve::PLCurve(std::vector<QVec2> vertices, IntVec2 closing) : vertices_(std::move(vertices)), closing_(closing) {
  if (vertices_.empty()) fail(ErrorCode::Malformed, "curve has no vertices");
  approx_.reserve(vertices_.size());
  for (const auto& v : vertices_) approx_.push_back(v.approx());
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertex(static_cast<std::int64_t>(i)) == vertex(static_cast<std::int64_t>(i) + 1))
      fail(ErrorCode::Malformed, "zero-length segment at index " + std::to_string(i));
}

PLCurve PLCurve::from_closed_chain(std::vector<QVec2> chain) {
  if (chain.size() < 2) fail(ErrorCode::Malformed, "closed chain needs at least two vertices");
  QVec2 w = chain.back() - chain.front();
  if (w.x.get_den() != 1 || w.y.get_den() != 1) fail(ErrorCode::Malformed, "closing displacement is not integral");
  IntVec2 cls{floor_to_int(w.x), floor_to_int(w.y)};
  chain.pop_back();
  return PLCurve(std::move(chain), cls);
}

QVec2 PLCurve::vertex(std::int64_t i) const {
  const auto k = static_cast<std::int64_t>(vertices_.size());
  std::int64_t q = i >= 0 ? i / k : -((-i + k - 1) / k);
  std::int64_t r = i - q * k;
  return vertices_[static_cast<std::size_t>(r)] + q * closing_;
}

Vec2 PLCurve::vertex_approx(std::int64_t i) const {
  const auto k = static_cast<std::int64_t>(vertices_.size());
  std::int64_t q = i >= 0 ? i / k : -((-i + k - 1) / k);
  std::int64_t r = i - q * k;
  return approx_[static_cast<std::size_t>(r)] + (q * closing_).to_real();
}

mpz_class PLCurve::max_denominator() const {
  mpz_class m = 1;
  for (const auto& v : vertices_) {
    if (v.x.get_den() > m) m = v.x.get_den();
    if (v.y.get_den() > m) m = v.y.get_den();
  }
  return m;
}

PLCurve PLCurve::rotated(std::int64_t s) const {
  std::vector<QVec2> out;
  out.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) out.push_back(vertex(s + static_cast<std::int64_t>(i)));
  return PLCurve(std::move(out), closing_);
}

PLCurve PLCurve::translated(IntVec2 t) const {
  std::vector<QVec2> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(v + t);
  return PLCurve(std::move(out), closing_);
}

PLCurve straight_curve(IntVec2 cls, QVec2 base) {
  if (cls.is_zero()) fail(ErrorCode::Domain, "straight curve needs a nonzero class");
  return PLCurve({std::move(base)}, cls);
}

PLCurve horizontal_curve(const Rational& height) { return straight_curve({1, 0}, QVec2(Rational(0), height)); }
PLCurve vertical_curve(const Rational& abscissa) { return straight_curve({0, 1}, QVec2(abscissa, Rational(0))); }

IntVec2 homology_class(const PLCurve& c) {
  IntVec2 w = c.closing();
  if (!w.is_zero() && !is_primitive(w)) fail(ErrorCode::Malformed, "homology class of a simple essential curve must be primitive");
  return w;
}

// ---------------------------------------------------------------------------
// Simplicity and intersections

bool is_simple(const PLCurve& c) {
  const std::size_t k = c.size();
  const IntVec2 w = c.closing();
  auto pairs = detail::candidate_pairs(c, c, true);
  std::atomic<bool> simple{true};
  std::vector<std::exception_ptr> errors(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    if (!simple.load(std::memory_order_relaxed)) continue;
    try {
      auto [i, j] = pairs[n];
      Pt p1 = detail::chain_point(c, i), p2 = detail::chain_point(c, i + 1);
      std::vector<IntVec2> ts;
      detail::candidate_translates(p1.f, p2.f, c.vertex_approx(j), c.vertex_approx(j + 1), ts);
      for (IntVec2 t : ts) {
        if (j == i && t.is_zero()) continue;
        Pt q1 = detail::chain_point(c, j, t), q2 = detail::chain_point(c, j + 1, t);
        Contact kind = detail::contact(p1, p2, q1, q2);
        if (kind == Contact::None) continue;
        if (kind == Contact::Overlap) {
          simple = false;
          break;
        }
        // (j, t) is the successor of i, or its predecessor.
        bool next = (i + 1 < k) ? (j == i + 1 && t.is_zero()) : (j == 0 && t == w);
        bool prev = (i > 0) ? (j == i - 1 && t.is_zero()) : (j == k - 1 && t == -w);
        if (next && prev) {
          simple = false;
          break;
        }
        if (!next && !prev) {
          simple = false;
          break;
        }
        // Neighbours share one vertex; they may not fold back over each other.
        const Pt& far = next ? q2 : q1;
        if (detail::orient(p1, p2, far) == 0) {
          QVec2 dp = p2.exact() - p1.exact();
          QVec2 dq = q2.exact() - q1.exact();
          if (sgn(dot(dp, dq)) < 0) {
            simple = false;
            break;
          }
        }
      }
    } catch (...) {
      errors[n] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return simple;
}

namespace {

struct RawContact {
  std::uint32_t i, j;
  IntVec2 t;
  Rational lam, mu;
};

// All contacts between a's base segments and translates of b's segments, with both
// parameters reduced to [0, 1) so each torus point appears once.
std::vector<RawContact> raw_contacts(const PLCurve& a, const PLCurve& b) {
  auto pairs = detail::candidate_pairs(a, b, false);
  std::vector<std::vector<RawContact>> found(pairs.size());
  std::vector<std::exception_ptr> errors(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    try {
      auto [i, j] = pairs[n];
      Pt p1 = detail::chain_point(a, i), p2 = detail::chain_point(a, i + 1);
      std::vector<IntVec2> ts;
      detail::candidate_translates(p1.f, p2.f, b.vertex_approx(j), b.vertex_approx(j + 1), ts);
      for (IntVec2 t : ts) {
        Pt q1 = detail::chain_point(b, j, t), q2 = detail::chain_point(b, j + 1, t);
        Contact kind = detail::contact(p1, p2, q1, q2);
        if (kind == Contact::None) continue;
        if (kind == Contact::Overlap) fail(ErrorCode::NonGeneric, "curves share a segment of positive length");
        auto [lam, mu] = detail::contact_params(p1, p2, q1, q2);
        if (lam == 1 || mu == 1) continue;
        found[n].push_back({i, j, t, std::move(lam), std::move(mu)});
      }
    } catch (...) {
      errors[n] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<RawContact> out;
  for (auto& f : found)
    for (auto& r : f) out.push_back(std::move(r));
  return out;
}

int position_kind(const Rational& p) { return p == 0 ? 0 : 2; }

}  // namespace

std::vector<Intersection> intersections(const PLCurve& a, const PLCurve& b) {
  auto raw = raw_contacts(a, b);
  std::vector<Intersection> out;
  out.reserve(raw.size());
  for (auto& r : raw) {
    Intersection x;
    QVec2 da = a.vertex(r.i + 1) - a.vertex(r.i);
    x.lifted = a.vertex(r.i) + r.lam * da;
    x.point = reduce_mod_one(x.lifted);
    x.seg_a = r.i;
    x.param_a = r.lam;
    x.seg_b = r.j;
    x.param_b = r.mu;
    x.offset = r.t;
    bool interior = r.lam != 0 && r.mu != 0;
    x.transverse = interior || detail::rays_cross(detail::local_rays(a, r.i, position_kind(r.lam)),
                                                  detail::local_rays(b, r.j, position_kind(r.mu)));
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(), [](const Intersection& p, const Intersection& q) {
    if (p.seg_a != q.seg_a) return p.seg_a < q.seg_a;
    return p.param_a < q.param_a;
  });
  return out;
}

std::size_t transverse_count(const PLCurve& a, const PLCurve& b) {
  auto xs = intersections(a, b);
  for (const auto& x : xs)
    if (!x.transverse) fail(ErrorCode::NonGeneric, "curves touch without crossing");
  return xs.size();
}

std::int64_t straight_class_intersection(IntVec2 u, IntVec2 v) {
  if (!is_primitive(u) || !is_primitive(v)) fail(ErrorCode::Domain, "straight_class_intersection: classes must be primitive");
  return std::llabs(det(u, v));
}

std::int64_t crossing_number(const PLCurve& a, const PLCurve& b) {
  if (!a.essential()) fail(ErrorCode::Domain, "crossing_number: reference curve must be essential");
  const IntVec2 wa = a.closing();
  auto pairs = detail::candidate_pairs(a, b, false);
  std::vector<std::vector<std::int64_t>> labels(pairs.size());
  std::vector<std::exception_ptr> errors(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    try {
      auto [i, j] = pairs[n];
      Pt p1 = detail::chain_point(a, i), p2 = detail::chain_point(a, i + 1);
      std::vector<IntVec2> ts;
      detail::candidate_translates(p1.f, p2.f, b.vertex_approx(j), b.vertex_approx(j + 1), ts);
      for (IntVec2 t : ts) {
        Pt q1 = detail::chain_point(b, j, t), q2 = detail::chain_point(b, j + 1, t);
        Contact kind = detail::contact(p1, p2, q1, q2);
        if (kind == Contact::None) continue;
        if (kind == Contact::Overlap) fail(ErrorCode::NonGeneric, "curves share a segment of positive length");
        auto [lam, mu] = detail::contact_params(p1, p2, q1, q2);
        // The period of b is half-open: its end point is the next segment's start.
        if (mu == 1) continue;
        bool vertex_a = lam == 0 || lam == 1, vertex_b = mu == 0 || mu == 1;
        if (vertex_a || vertex_b) {
          int at_a = lam == 0 ? 0 : (lam == 1 ? 1 : 2), at_b = mu == 0 ? 0 : (mu == 1 ? 1 : 2);
          if (!detail::rays_cross(detail::local_rays(a, i, at_a), detail::local_rays(b, j, at_b)))
            fail(ErrorCode::NonGeneric, "crossing_number: tangential contact");
        }
        // Segment i of a meets segment j of b + t: the elevation a - t meets the base arc of b.
        labels[n].push_back(det(wa, t));
      }
    } catch (...) {
      errors[n] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<std::int64_t> all;
  for (auto& l : labels) all.insert(all.end(), l.begin(), l.end());
  std::sort(all.begin(), all.end());
  return static_cast<std::int64_t>(std::unique(all.begin(), all.end()) - all.begin());
}

// ---------------------------------------------------------------------------
// Covers

CoverLift lift_to_cover(const PLCurve& c, std::int64_t n, IntVec2 elevation_offset) {
  if (n < 1) fail(ErrorCode::Domain, "cover degree must be positive");
  IntVec2 w = homology_class(c);
  if (w.is_zero()) fail(ErrorCode::Domain, "lift_to_cover: curve must be essential");
  // w is primitive, so d w lies in n Z^2 first for d = n.
  std::int64_t d = n / gcd(n, gcd(w.x, w.y));
  Rational inv(1, static_cast<unsigned long>(n));
  std::vector<QVec2> verts;
  verts.reserve(c.size() * d);
  for (std::int64_t m = 0; m < d; ++m)
    for (std::size_t i = 0; i < c.size(); ++i)
      verts.push_back(inv * ((c.vertices()[i] + m * w) + elevation_offset));
  CoverLift out{PLCurve(std::move(verts), w), d * w, d};
  return out;
}

// ---------------------------------------------------------------------------
// Image curves

namespace {

Vec2 map_point(const LiftedMap& f, std::int64_t iterations, Vec2 p) { return iterate(f, iterations, p); }

}  // namespace

namespace {

// Samples the image of every segment of c, bisecting while image chords exceed max_chord.
std::vector<Vec2> sample_image(const LiftedMap& f, const PLCurve& c, const ImageOptions& opts, double max_chord) {
  const std::size_t k = c.size();
  std::vector<std::vector<Vec2>> mapped(k);
  std::vector<std::exception_ptr> errors(k);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < k; ++i) {
    try {
      Vec2 s = c.vertex_approx(static_cast<std::int64_t>(i)), e = c.vertex_approx(static_cast<std::int64_t>(i) + 1);
      auto at = [&](double u) { return s + u * (e - s); };
      std::vector<Vec2>& out = mapped[i];
      Vec2 prev = map_point(f, opts.iterations, s);
      for (int m = 0; m < opts.res; ++m) {
        double u0 = static_cast<double>(m) / opts.res, u1 = static_cast<double>(m + 1) / opts.res;
        Vec2 img1 = map_point(f, opts.iterations, at(u1));
        out.push_back(prev);
        if (max_chord > 0.0) {
          // Depth-first bisection of [u0, u1] keeping the image chords short.
          struct Job {
            double u0, u1;
            Vec2 f0, f1;
            int depth;
          };
          std::vector<Job> stack{{u0, u1, prev, img1, 0}};
          while (!stack.empty()) {
            Job job = stack.back();
            stack.pop_back();
            if (job.depth >= opts.max_depth || norm(job.f1 - job.f0) <= max_chord) {
              if (job.u1 != u1) out.push_back(job.f1);
              continue;
            }
            double um = 0.5 * (job.u0 + job.u1);
            Vec2 fm = map_point(f, opts.iterations, at(um));
            stack.push_back({um, job.u1, fm, job.f1, job.depth + 1});
            stack.push_back({job.u0, um, job.f0, fm, job.depth + 1});
          }
        }
        prev = img1;
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Vec2> pts;
  for (auto& m : mapped) pts.insert(pts.end(), m.begin(), m.end());
  return pts;
}

constexpr int kPerturbations = 8;
constexpr int kRefinements = 6;
constexpr double kFirstChord = 0.05;
constexpr std::size_t kMaxImageVertices = 400000;

}  // namespace

PLCurve image_curve(const LiftedMap& f, const PLCurve& c, const ImageOptions& opts) {
  if (opts.res < 1) fail(ErrorCode::Domain, "image_curve: res must be positive");
  const IntVec2 cls = f.linear_part().power(opts.iterations) * c.closing();

  // A non-simple polygon means the sampling missed a fold of the true image: refine and resample.
  // Genericity failures against the reference are cured by sub-grid perturbations instead.
  std::string last_reason;
  double chord = opts.max_chord;
  for (int level = 0; level <= kRefinements; ++level) {
    if (level > 0) chord = chord > 0.0 ? 0.5 * chord : kFirstChord;
    std::vector<Vec2> pts = sample_image(f, c, opts, chord);
    if (pts.size() > kMaxImageVertices) break;
    bool refine = false;
    for (int attempt = 0; attempt <= kPerturbations && !refine; ++attempt) {
      const Vec2 offset{attempt * 1e-9, attempt * 0.5e-9};
      std::vector<QVec2> snapped(pts.size());
#pragma omp parallel for schedule(static)
      for (std::size_t i = 0; i < pts.size(); ++i) {
        Vec2 p = pts[i] + offset;
        snapped[i] = QVec2(limit_denominator(p.x, kSnapDenominator), limit_denominator(p.y, kSnapDenominator));
      }
      std::vector<QVec2> verts;
      verts.reserve(snapped.size());
      for (auto& q : snapped)
        if (verts.empty() || !(verts.back() == q)) verts.push_back(std::move(q));
      while (verts.size() > 1 && verts.back() == verts.front() + cls) verts.pop_back();
      try {
        PLCurve img(std::move(verts), cls);
        if (!is_simple(img)) {
          last_reason = "image is not simple";
          refine = true;
          continue;
        }
        if (opts.reference) transverse_count(*opts.reference, img);
        return img;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonGeneric && e.code() != ErrorCode::Malformed) throw;
        last_reason = e.what();
      }
    }
    if (!refine) break;
  }
  fail(ErrorCode::Resolution, "image_curve: " + last_reason + " after refinement; increase res or lower max_chord");
}

}  // namespace rotgraph
