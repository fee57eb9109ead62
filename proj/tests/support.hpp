#pragma once

// Random inputs and brute-force oracles shared by the unit tests and the acceptance runner.
// The oracles deliberately avoid the library's predicates and candidate filtering.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "rotgraph/curve.hpp"
#include "rotgraph/geometry.hpp"
#include "rotgraph/rational.hpp"

namespace testing_support {

using rotgraph::IntVec2;
using rotgraph::PLCurve;
using rotgraph::QVec2;
using rotgraph::Rational;

inline Rational random_rational(std::mt19937_64& rng, double lo, double hi, long max_den) {
  std::uniform_int_distribution<long> dd(1, max_den);
  long q = dd(rng);
  auto plo = static_cast<long>(std::ceil(lo * q)), phi = static_cast<long>(std::floor(hi * q));
  if (plo > phi) return Rational(static_cast<long>(std::lround(0.5 * (lo + hi) * q)), q);
  std::uniform_int_distribution<long> pd(plo, phi);
  Rational r(pd(rng), q);
  r.canonicalize();
  return r;
}

inline IntVec2 random_primitive(std::mt19937_64& rng, std::int64_t max_entry) {
  std::uniform_int_distribution<std::int64_t> d(-max_entry, max_entry);
  for (;;) {
    IntVec2 v{d(rng), d(rng)};
    if (!v.is_zero() && rotgraph::is_primitive(v)) return v;
  }
}

// u with det(w, u) = 1.
inline IntVec2 complement(IntVec2 w) {
  std::int64_t s = 0, t = 0;
  rotgraph::extended_gcd(w.x, w.y, s, t);  // s w.x + t w.y = 1, so det(w, (-t, s)) = 1
  return {-t, s};
}

// Graph over the class direction: v_k = (k / K) w + h_k u with |h_k| < amp, plus an offset.
// Simple and essential for amp < 1/2.
inline PLCurve random_curve(std::mt19937_64& rng, IntVec2 w, int k, double amp = 0.45, long max_den = 24) {
  IntVec2 u = complement(w);
  QVec2 base(random_rational(rng, 0.0, 1.0, max_den), random_rational(rng, 0.0, 1.0, max_den));
  std::vector<QVec2> pts;
  for (int i = 0; i < k; ++i) {
    Rational s(i, k);
    s.canonicalize();
    Rational h = random_rational(rng, -amp, amp, max_den);
    pts.push_back(base + s * QVec2(w) + h * QVec2(u));
  }
  return PLCurve(std::move(pts), w);
}

namespace oracle {

inline Rational cross3(const QVec2& o, const QVec2& a, const QVec2& b) { return rotgraph::cross(a - o, b - o); }

struct SegHit {
  bool overlap = false;
  QVec2 point;
};

// Exact intersection of closed segments [p1, p2] and [q1, q2].
inline std::optional<SegHit> meet(const QVec2& p1, const QVec2& p2, const QVec2& q1, const QVec2& q2) {
  Rational d1 = cross3(p1, p2, q1), d2 = cross3(p1, p2, q2), d3 = cross3(q1, q2, p1), d4 = cross3(q1, q2, p2);
  auto on = [](const QVec2& a, const QVec2& b, const QVec2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
  };
  if (d1 == 0 && d2 == 0) {
    if (on(p1, p2, q1) || on(p1, p2, q2) || on(q1, q2, p1) || on(q1, q2, p2)) {
      // Collinear: a single shared endpoint or a genuine overlap.
      std::vector<QVec2> shared;
      for (const QVec2* e : {&q1, &q2})
        if (on(p1, p2, *e)) shared.push_back(*e);
      for (const QVec2* e : {&p1, &p2})
        if (on(q1, q2, *e)) shared.push_back(*e);
      std::sort(shared.begin(), shared.end());
      shared.erase(std::unique(shared.begin(), shared.end()), shared.end());
      if (shared.size() == 1) return SegHit{false, shared[0]};
      return SegHit{true, shared[0]};
    }
    return std::nullopt;
  }
  if (sgn(d1) * sgn(d2) > 0 || sgn(d3) * sgn(d4) > 0) return std::nullopt;
  Rational lam = d3 / (d3 - d4);
  return SegHit{false, p1 + lam * (p2 - p1)};
}

inline std::vector<QVec2> chain(const PLCurve& c) {
  std::vector<QVec2> out(c.vertices());
  out.push_back(c.vertices().front() + c.closing());
  return out;
}

inline void box(const QVec2& a, const QVec2& b, double& xl, double& xh, double& yl, double& yh) {
  xl = std::min(a.x.get_d(), b.x.get_d());
  xh = std::max(a.x.get_d(), b.x.get_d());
  yl = std::min(a.y.get_d(), b.y.get_d());
  yh = std::max(a.y.get_d(), b.y.get_d());
}

struct Contact {
  std::size_t i, j;
  IntVec2 t;
  SegHit hit;
};

// Every contact of a's segment i with b's segment j + t over all integer t.
inline std::vector<Contact> contacts(const PLCurve& a, const PLCurve& b) {
  auto ca = chain(a), cb = chain(b);
  std::vector<Contact> out;
  for (std::size_t i = 0; i + 1 < ca.size(); ++i)
    for (std::size_t j = 0; j + 1 < cb.size(); ++j) {
      double axl, axh, ayl, ayh, bxl, bxh, byl, byh;
      box(ca[i], ca[i + 1], axl, axh, ayl, ayh);
      box(cb[j], cb[j + 1], bxl, bxh, byl, byh);
      for (auto tx = static_cast<std::int64_t>(std::floor(axl - bxh)) - 1; tx <= static_cast<std::int64_t>(std::ceil(axh - bxl)) + 1; ++tx)
        for (auto ty = static_cast<std::int64_t>(std::floor(ayl - byh)) - 1; ty <= static_cast<std::int64_t>(std::ceil(ayh - byl)) + 1; ++ty) {
          IntVec2 t{tx, ty};
          auto h = meet(ca[i], ca[i + 1], cb[j] + t, cb[j + 1] + t);
          if (h) out.push_back({i, j, t, *h});
        }
    }
  return out;
}

// Distinct intersection points on the torus; nullopt on overlapping segments.
inline std::optional<std::size_t> intersection_count(const PLCurve& a, const PLCurve& b) {
  std::set<QVec2> pts;
  for (const auto& c : contacts(a, b)) {
    if (c.hit.overlap) return std::nullopt;
    pts.insert(rotgraph::reduce_mod_one(c.hit.point));
  }
  return pts.size();
}

inline bool simple(const PLCurve& c) {
  const std::size_t k = c.size();
  const IntVec2 w = c.closing();
  auto ch = chain(c);
  for (const auto& x : contacts(c, c)) {
    if (x.i == x.j && x.t.is_zero()) continue;
    if (x.hit.overlap) return false;
    // Consecutive segments share exactly one endpoint.
    bool next = (x.j == x.i + 1 && x.t.is_zero()) || (x.i + 1 == k && x.j == 0 && x.t == w);
    bool prev = (x.i == x.j + 1 && x.t.is_zero()) || (x.i == 0 && x.j + 1 == k && x.t == IntVec2{-w.x, -w.y});
    if (next && x.hit.point == ch[x.i + 1]) continue;
    if (prev && x.hit.point == ch[x.i]) continue;
    return false;
  }
  return true;
}

// Number of distinct det(w_a, t) over contacts of a with b + t (elevation labels).
inline std::size_t elevations_met(const PLCurve& a, const PLCurve& b) {
  std::set<std::int64_t> labels;
  IntVec2 w = a.closing();
  auto cb = chain(b);
  for (const auto& c : contacts(a, b))
    if (c.hit.overlap || c.hit.point != cb[c.j + 1] + c.t) labels.insert(rotgraph::det(w, c.t));
  return labels.size();
}

// Breadth-first distances in the Farey graph restricted to slopes with entries <= bound.
class FareyBox {
public:
  explicit FareyBox(std::int64_t bound) {
    for (std::int64_t x = 0; x <= bound; ++x)
      for (std::int64_t y = -bound; y <= bound; ++y) {
        if (x == 0 && y <= 0) continue;
        IntVec2 v{x, y};
        if (rotgraph::is_primitive(v)) {
          index_[v] = nodes_.size();
          nodes_.push_back(v);
        }
      }
    adj_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      for (std::size_t j = i + 1; j < nodes_.size(); ++j)
        if (std::llabs(rotgraph::det(nodes_[i], nodes_[j])) == 1) {
          adj_[i].push_back(j);
          adj_[j].push_back(i);
        }
  }

  const std::vector<IntVec2>& nodes() const { return nodes_; }

  static IntVec2 canonical(IntVec2 v) {
    if (v.x < 0 || (v.x == 0 && v.y < 0)) return {-v.x, -v.y};
    return v;
  }

  std::vector<std::int64_t> distances_from(IntVec2 s) const {
    std::vector<std::int64_t> d(nodes_.size(), -1);
    std::size_t src = index_.at(canonical(s));
    std::queue<std::size_t> q;
    d[src] = 0;
    q.push(src);
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop();
      for (std::size_t u : adj_[v])
        if (d[u] < 0) {
          d[u] = d[v] + 1;
          q.push(u);
        }
    }
    return d;
  }

  std::size_t index(IntVec2 v) const { return index_.at(canonical(v)); }

private:
  std::vector<IntVec2> nodes_;
  std::map<IntVec2, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace oracle

// Adjacent random pair: a random graph curve b over w_b with a curve a of a neighbouring
// class chosen so that the straight representatives cross once, then checked exactly.
inline std::optional<std::pair<PLCurve, PLCurve>> random_adjacent_pair(std::mt19937_64& rng) {
  IntVec2 w = random_primitive(rng, 4);
  IntVec2 u = complement(w);
  std::uniform_int_distribution<int> kd(1, 4);
  PLCurve a = random_curve(rng, w, kd(rng), 0.2);
  PLCurve b = random_curve(rng, std::uniform_int_distribution<int>(0, 1)(rng) ? u : w, kd(rng), 0.2);
  auto n = oracle::intersection_count(a, b);
  if (!n || *n > 1) return std::nullopt;
  return std::pair{a, b};
}

}  // namespace testing_support
