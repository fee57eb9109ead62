#include "rotgraph/fine_graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

#include "rotgraph/errors.hpp"
#include "rotgraph/farey.hpp"
#include "rotgraph/hull.hpp"

namespace rotgraph {

bool adjacent(const PLCurve& a, const PLCurve& b) { return transverse_count(a, b) <= 1; }

PathCheck verify_path(const CertifiedPath& path, const PLCurve* from, const PLCurve* to) {
  PathCheck out;
  auto reject = [&](std::optional<std::size_t> step, std::string why) {
    out.valid = false;
    out.failing_step = step;
    out.reason = std::move(why);
    return out;
  };
  if (path.curves.empty()) return reject(std::nullopt, "empty path");
  if (from && !(path.curves.front() == *from)) return reject(0, "path does not start at the given curve");
  if (to && !(path.curves.back() == *to)) return reject(path.curves.size() - 1, "path does not end at the given curve");
  for (std::size_t i = 0; i < path.curves.size(); ++i) {
    const PLCurve& c = path.curves[i];
    if (!c.essential()) return reject(i, "curve " + std::to_string(i) + " is inessential");
    if (!is_simple(c)) return reject(i, "curve " + std::to_string(i) + " is not simple");
  }
  for (std::size_t i = 0; i + 1 < path.curves.size(); ++i) {
    try {
      std::size_t n = transverse_count(path.curves[i], path.curves[i + 1]);
      if (n > 1) return reject(i, "curves " + std::to_string(i) + " and " + std::to_string(i + 1) + " meet " +
                                      std::to_string(n) + " times");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonGeneric) throw;
      return reject(i, std::string("non-generic contact: ") + e.what());
    }
  }
  return out;
}

namespace {

bool pos_less(std::size_t s1, const Rational& t1, std::size_t s2, const Rational& t2) {
  return s1 < s2 || (s1 == s2 && t1 < t2);
}

struct Loop {
  std::vector<QVec2> chain;
  IntVec2 cls;
};

// The loop formed by the subarc of a from s to e and one of the two arcs of b back to s.
Loop build_loop(const PLCurve& a, const PLCurve& b, const Intersection& s, const Intersection& e, bool wrap,
                bool forward) {
  const auto ka = static_cast<std::int64_t>(a.size()), kb = static_cast<std::int64_t>(b.size());
  const IntVec2 wa = a.closing(), wb = b.closing();
  QVec2 e_lift = wrap ? e.lifted + wa : e.lifted;
  IntVec2 t_s = s.offset, t_e = wrap ? e.offset + wa : e.offset;

  Loop loop;
  loop.chain.push_back(s.lifted);
  std::int64_t e_seg = static_cast<std::int64_t>(e.seg_a) + (wrap ? ka : 0);
  std::int64_t last_a = e.param_a == 0 ? e_seg - 1 : e_seg;
  for (std::int64_t j = static_cast<std::int64_t>(s.seg_a) + 1; j <= last_a; ++j) loop.chain.push_back(a.vertex(j));
  loop.chain.push_back(e_lift);

  const auto sb = static_cast<std::int64_t>(s.seg_b), eb = static_cast<std::int64_t>(e.seg_b);
  bool s_after_e = pos_less(e.seg_b, e.param_b, s.seg_b, s.param_b);
  if (forward) {
    std::int64_t m = s_after_e ? 0 : 1;
    std::int64_t last = sb + m * kb - (s.param_b == 0 ? 1 : 0);
    for (std::int64_t j = eb + 1; j <= last; ++j) loop.chain.push_back(b.vertex(j) + t_e);
    loop.cls = m * wb + t_e - t_s;
  } else {
    std::int64_t m = s_after_e ? 1 : 0;
    std::int64_t first = e.param_b == 0 ? eb - 1 : eb;
    for (std::int64_t j = first; j >= sb - m * kb + 1; --j) loop.chain.push_back(b.vertex(j) + t_e);
    loop.cls = t_e - t_s - m * wb;
  }
  std::vector<QVec2> dedup;
  for (auto& v : loop.chain)
    if (dedup.empty() || !(dedup.back() == v)) dedup.push_back(std::move(v));
  while (dedup.size() > 1 && dedup.back() == dedup.front() + loop.cls) dedup.pop_back();
  loop.chain = std::move(dedup);
  return loop;
}

Rational inf_norm(const QVec2& v) { return std::max(abs(v.x), abs(v.y)); }

Rational round_to_grid(const Rational& x, unsigned bits) {
  mpz_class scale = 1;
  scale <<= bits;
  Rational scaled = x * Rational(scale) + Rational(1, 2);
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(f, scale);
  out.canonicalize();
  return out;
}

// Parallel copy of the closed chain at distance eps (in the sup norm of each edge normal) to
// the given side, with miter joins, snapped to the dyadic grid of spacing 2^-bits.
std::optional<PLCurve> offset_loop(const Loop& loop, const Rational& eps, int side, unsigned bits) {
  const auto k = static_cast<std::int64_t>(loop.chain.size());
  auto vert = [&](std::int64_t i) {
    std::int64_t q = i >= 0 ? i / k : -((-i + k - 1) / k);
    return loop.chain[static_cast<std::size_t>(i - q * k)] + q * loop.cls;
  };
  std::vector<QVec2> dirs(static_cast<std::size_t>(k)), normals(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) {
    QVec2 d = vert(i + 1) - vert(i);
    Rational n = inf_norm(d);
    if (n == 0) return std::nullopt;
    dirs[i] = d;
    normals[i] = Rational(side) / n * QVec2(-d.y, d.x);
  }
  std::vector<QVec2> out;
  out.reserve(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) {
    const QVec2& dp = dirs[(i + k - 1) % k];
    const QVec2& dc = dirs[i];
    const QVec2& np = normals[(i + k - 1) % k];
    const QVec2& nc = normals[i];
    Rational c = cross(dp, dc);
    QVec2 v = vert(i), p;
    if (c == 0) {
      if (sgn(dot(dp, dc)) < 0) return std::nullopt;
      p = v + eps * nc;
    } else {
      Rational lam = eps * (cross(nc, dc) - cross(np, dc)) / c;
      p = v + eps * np + lam * dp;
    }
    QVec2 snapped(round_to_grid(p.x, bits), round_to_grid(p.y, bits));
    if (out.empty() || !(out.back() == snapped)) out.push_back(std::move(snapped));
  }
  while (out.size() > 1 && out.back() == out.front() + loop.cls) out.pop_back();
  try {
    return PLCurve(std::move(out), loop.cls);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Malformed) throw;
    return std::nullopt;
  }
}

std::optional<std::size_t> count_or_none(const PLCurve& a, const PLCurve& c) {
  try {
    return transverse_count(a, c);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonGeneric) throw;
    return std::nullopt;
  }
}

bool adjacent_or_false(const PLCurve& a, const PLCurve& b) {
  auto n = count_or_none(a, b);
  return n && *n <= 1;
}

unsigned grid_bits_for(const mpz_class& max_den) {
  // eps = 2^-e with 2^-e <= 1/(4 max_den).
  unsigned e = 2;
  mpz_class p = 4;
  while (p < 4 * max_den) {
    p <<= 1;
    ++e;
  }
  return e;
}

}  // namespace

SurgeryResult surgery_step_detailed(const PLCurve& a, const PLCurve& b) {
  auto xs = intersections(a, b);
  for (const auto& x : xs)
    if (!x.transverse) fail(ErrorCode::NonGeneric, "surgery: curves touch without crossing");
  const std::size_t m = xs.size();
  if (m < 2) fail(ErrorCode::Domain, "surgery needs at least two intersection points");

  mpz_class den = std::max(a.max_denominator(), b.max_denominator());
  const unsigned e0 = grid_bits_for(den);

  struct Candidate {
    std::size_t count;
    std::size_t r;
    IntVec2 cls;
    int forward;
    int side;
    unsigned halvings;
    bool operator>(const Candidate& o) const {
      return std::tie(count, r, cls, forward, side, halvings) > std::tie(o.count, o.r, o.cls, o.forward, o.side, o.halvings);
    }
  };
  std::vector<Loop> loops;  // indexed by r * 2 + forward
  loops.reserve(2 * m);
  for (std::size_t r = 0; r < m; ++r)
    for (int fw = 0; fw < 2; ++fw) loops.push_back(build_loop(a, b, xs[r], xs[(r + 1) % m], r + 1 == m, fw == 1));

  auto make_curve = [&](std::size_t r, int fw, int side, unsigned h) -> std::optional<PLCurve> {
    const Loop& loop = loops[r * 2 + fw];
    unsigned e = e0 + h;
    Rational eps(mpz_class(1), mpz_class(1) << e);
    return offset_loop(loop, eps, side, e + 4);
  };

  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
  auto push = [&](std::size_t r, int fw, int side, unsigned h) {
    for (; h <= 8; ++h) {
      auto c = make_curve(r, fw, side, h);
      if (!c) continue;
      auto n = count_or_none(a, *c);
      if (!n) continue;
      if (*n < m) queue.push({*n, r, loops[r * 2 + fw].cls, fw, side, h});
      return;
    }
  };
  for (std::size_t r = 0; r < m; ++r)
    for (int fw = 0; fw < 2; ++fw) {
      if (loops[r * 2 + fw].cls.is_zero()) continue;
      for (int side : {1, -1}) push(r, fw, side, 0);
    }

  while (!queue.empty()) {
    Candidate cand = queue.top();
    queue.pop();
    auto c = make_curve(cand.r, cand.forward, cand.side, cand.halvings);
    if (!is_simple(*c)) {
      push(cand.r, cand.forward, cand.side, cand.halvings + 1);
      continue;
    }
    if (adjacent_or_false(b, *c)) return {std::move(*c), std::nullopt, m, cand.count};
    // A second parallel copy can bridge b and the pushed curve.
    for (auto [side, extra] : {std::pair{cand.side, 1u}, std::pair{-cand.side, 0u}}) {
      unsigned h = cand.halvings;
      if (extra == 1 && h == 0) continue;
      auto mid = make_curve(cand.r, cand.forward, side, extra == 1 ? h - 1 : h);
      if (mid && is_simple(*mid) && adjacent_or_false(b, *mid) && adjacent_or_false(*mid, *c))
        return {std::move(*c), std::move(mid), m, cand.count};
    }
    push(cand.r, cand.forward, cand.side, cand.halvings + 1);
  }
  fail(ErrorCode::Internal, "surgery: no valid subarc found");
}

DistanceBounds upper_bound_by_intersection(const PLCurve& a, const PLCurve& b) {
  DistanceBounds out;
  out.intersections = transverse_count(a, b);
  out.lower = farey_lower_bound(a, b);
  CertifiedPath path;
  path.curves.push_back(b);
  PLCurve cur = b;
  std::size_t guard = 0;
  while (!adjacent(cur, a)) {
    if (++guard > out.intersections + 2) fail(ErrorCode::Internal, "surgery did not terminate");
    SurgeryResult step = surgery_step_detailed(a, cur);
    if (step.middle) path.curves.push_back(*step.middle);
    path.curves.push_back(step.curve);
    cur = std::move(step.curve);
  }
  if (!(path.curves.back() == a)) path.curves.push_back(a);
  out.upper = path.bound();
  if (out.upper > 2 * static_cast<std::int64_t>(out.intersections) + 2)
    fail(ErrorCode::Internal, "certificate longer than the intersection bound");
  out.certificate = std::move(path);
  return out;
}

std::int64_t crossing_upper_bound(const PLCurve& a, const PLCurve& b) {
  if (!same_slope(homology_class(a), homology_class(b)))
    fail(ErrorCode::Inapplicable, "crossing bound needs isotopic curves");
  return crossing_number(a, b) + 1;
}

std::int64_t farey_lower_bound(const PLCurve& a, const PLCurve& b) {
  return farey_distance(homology_class(a), homology_class(b));
}

TranslationLengthBounds translation_length_bounds(const LiftedMap& f, const PLCurve& a,
                                                  const TranslationLengthOptions& opts) {
  const IsotopyClass iso = isotopy_class(f);
  std::vector<std::int64_t> ns = opts.schedule;
  if (ns.empty())
    for (std::int64_t n = 1; n <= opts.n_max; ++n) ns.push_back(n);
  bool affine = std::all_of(f.primitives().begin(), f.primitives().end(), [](const Primitive& p) {
    return std::holds_alternative<Linear>(p) || std::holds_alternative<Translation>(p);
  });
  const IntVec2 w = homology_class(a);
  TranslationLengthBounds out;
  out.upper = INFINITY;
  for (std::int64_t n : ns) {
    TranslationLengthRow row;
    row.n = n;
    IntVec2 cls = f.linear_part().power(n) * w;
    row.farey = farey_distance(w, cls);
    row.lower = static_cast<double>(row.farey) / static_cast<double>(n);
    if (iso.kind == IsotopyClass::Kind::IdentityIsotopic) {
      ImageOptions io;
      io.iterations = n;
      io.res = opts.res;
      io.max_chord = opts.max_chord;
      io.reference = &a;
      PLCurve img = image_curve(f, a, io);
      row.count = crossing_number(a, img);
      row.upper = static_cast<double>(row.count + 1) / static_cast<double>(n);
      row.method = "crossing";
    } else {
      std::int64_t count;
      std::optional<std::int64_t> certified;
      if (affine && a.size() == 1) {
        count = std::llabs(det(w, cls));
      } else {
        ImageOptions io;
        io.iterations = n;
        io.res = opts.res;
        io.max_chord = opts.max_chord;
        io.reference = &a;
        PLCurve img = image_curve(f, a, io);
        count = static_cast<std::int64_t>(transverse_count(a, img));
        if (static_cast<std::size_t>(count) <= opts.surgery_limit) certified = upper_bound_by_intersection(a, img).upper;
      }
      row.count = count;
      if (certified) {
        row.upper = static_cast<double>(*certified) / static_cast<double>(n);
        row.method = "surgery";
      } else {
        row.upper = static_cast<double>(2 * count + 2) / static_cast<double>(n);
        row.method = "intersection_formula";
      }
    }
    out.upper = std::min(out.upper, row.upper);
    out.lower = std::max(out.lower, row.lower);
    out.trace.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Annulus traps

namespace {

QVec2 apply_matrix(const IntMatrix& m, const QVec2& v) {
  return {from_int(m.a) * v.x + from_int(m.b) * v.y, from_int(m.c) * v.x + from_int(m.d) * v.y};
}

PLCurve transform_curve(const IntMatrix& m, const PLCurve& c) {
  std::vector<QVec2> out;
  out.reserve(c.size());
  for (const auto& v : c.vertices()) out.push_back(apply_matrix(m, v));
  return PLCurve(std::move(out), m * c.closing());
}

// A curve of class +-(1, 0) in the cylinder chart, as a closed chain of float points over one period.
struct ChartCurve {
  std::vector<Vec2> pts;  // pts.back() = pts.front() + (+-1, 0)
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;

  explicit ChartCurve(const PLCurve& c) {
    for (std::size_t i = 0; i <= c.size(); ++i) {
      Vec2 p = c.vertex_approx(static_cast<std::int64_t>(i));
      pts.push_back(p);
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }

  // Parity of crossings of the upward ray from q with the projection of the curve shifted up by k.
  bool below(Vec2 q, double k) const {
    int count = 0;
    long m0 = static_cast<long>(std::floor(q.x - xmax)) - 1, m1 = static_cast<long>(std::ceil(q.x - xmin)) + 1;
    for (long m = m0; m <= m1; ++m) {
      double x = q.x - static_cast<double>(m);
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Vec2 a = pts[i], b = pts[i + 1];
        if ((a.x <= x && x < b.x) || (b.x <= x && x < a.x)) {
          double y = a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y) + k;
          if (y > q.y) ++count;
        }
      }
    }
    return count % 2 == 1;
  }

  // Integer k with q above the curve shifted by k and below it shifted by k + 1.
  std::optional<long> level(Vec2 q) const {
    long k0 = static_cast<long>(std::floor(q.y - ymax)) - 1, k1 = static_cast<long>(std::ceil(q.y - ymin)) + 1;
    for (long k = k0; k <= k1; ++k)
      if (!below(q, static_cast<double>(k)) && below(q, static_cast<double>(k + 1))) return k;
    return std::nullopt;
  }

  double distance(Vec2 q) const {
    double d = INFINITY;
    long m0 = static_cast<long>(std::floor(q.x - xmax)) - 1, m1 = static_cast<long>(std::ceil(q.x - xmin)) + 1;
    long k0 = static_cast<long>(std::floor(q.y - ymax)) - 1, k1 = static_cast<long>(std::ceil(q.y - ymin)) + 1;
    for (long m = m0; m <= m1; ++m)
      for (long k = k0; k <= k1; ++k) {
        Vec2 s{static_cast<double>(m), static_cast<double>(k)};
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) d = std::min(d, point_segment_distance(q, pts[i] + s, pts[i + 1] + s));
      }
    return d;
  }
};

}  // namespace

std::optional<EllipticCertificate> annulus_trap_certificate(const LiftedMap& f, const PLCurve& lower,
                                                            const PLCurve& upper, std::int64_t n_max,
                                                            int sample_res) {
  if (n_max < 1 || sample_res < 1) fail(ErrorCode::Domain, "annulus certificate: n_max and sample_res must be positive");
  IntVec2 w = homology_class(lower);
  if (w.is_zero() || !same_slope(w, homology_class(upper)))
    fail(ErrorCode::Input, "annulus boundary curves must be essential and isotopic");
  if (!is_simple(lower) || !is_simple(upper)) fail(ErrorCode::Input, "annulus boundary curves must be simple");
  if (!intersections(lower, upper).empty()) fail(ErrorCode::Input, "annulus boundary curves must be disjoint");

  const IntMatrix chart = sl2_to_first_axis(w);
  const LiftedMap g = conjugate(f, chart);
  const ChartCurve c1(transform_curve(chart, lower));
  ChartCurve c2(transform_curve(chart, upper));
  // Lift the upper curve into the fundamental strip above c1.
  auto lvl = c1.level(c2.pts.front());
  if (!lvl) fail(ErrorCode::Internal, "annulus certificate: cannot place boundary lift");
  for (auto& p : c2.pts) p.y -= static_cast<double>(*lvl);
  c2.ymin -= static_cast<double>(*lvl);
  c2.ymax -= static_cast<double>(*lvl);

  std::vector<Vec2> samples;
  for (const ChartCurve* c : {&c1, static_cast<const ChartCurve*>(&c2)})
    for (std::size_t i = 0; i + 1 < c->pts.size(); ++i)
      for (int s = 0; s < sample_res; ++s)
        samples.push_back(c->pts[i] + (static_cast<double>(s) / sample_res) * (c->pts[i + 1] - c->pts[i]));

  for (std::int64_t n = 1; n <= n_max; ++n) {
    double margin = INFINITY;
    bool inside = true;
    for (Vec2 p : samples) {
      Vec2 q = iterate(g, n, p);
      auto k = c1.level(q);
      if (!k || !c2.below(q, static_cast<double>(*k))) {
        inside = false;
        break;
      }
      margin = std::min({margin, c1.distance(q), c2.distance(q)});
      if (margin < kTrapMargin) {
        inside = false;
        break;
      }
    }
    if (inside) {
      EllipticCertificate cert{lower, upper, n, margin, static_cast<std::int64_t>(samples.size()), "numeric evidence"};
      return cert;
    }
  }
  return std::nullopt;
}

}  // namespace rotgraph
