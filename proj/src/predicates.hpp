#pragma once

// Exact segment predicates on lifted curve chains. Orientation signs use a floating-point
// filter with a forward error bound and fall back to rational arithmetic when the filter
// cannot certify the sign.

#include <cstdint>
#include <utility>
#include <vector>

#include "rotgraph/curve.hpp"

namespace rotgraph::detail {

// The point base + shift, with its floating approximation.
struct Pt {
  const QVec2* base = nullptr;
  IntVec2 shift;
  Vec2 f;

  QVec2 exact() const { return *base + shift; }
};

// Chain vertex idx in [0, size] of c, shifted by t; idx == size is v_0 + w.
Pt chain_point(const PLCurve& c, std::size_t idx, IntVec2 t = {});

int orient(const Pt& a, const Pt& b, const Pt& c);

enum class Contact { None, Point, Overlap };

Contact contact(const Pt& p1, const Pt& p2, const Pt& q1, const Pt& q2);

// Exact parameters (lambda on p, mu on q) of the single contact point.
std::pair<Rational, Rational> contact_params(const Pt& p1, const Pt& p2, const Pt& q1, const Pt& q2);

// Integer t such that [p1, p2] may meet [q1, q2] + t (conservative superset).
void candidate_translates(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2, std::vector<IntVec2>& out);

// Pairs (i, j) of segments of a and b whose projections to the torus may meet.
// With same = true only i <= j is produced.
std::vector<std::pair<std::uint32_t, std::uint32_t>> candidate_pairs(const PLCurve& a, const PLCurve& b, bool same);

// Incoming and outgoing directions of the chain at a segment position; at == 0 is the
// segment's start vertex, at == 1 its end vertex, anything else an interior point.
std::pair<QVec2, QVec2> local_rays(const PLCurve& c, std::size_t seg, int at);

// 1 when the rays of b separate the rays of a, 0 for a touching contact, throws NonGeneric
// when rays coincide.
bool rays_cross(const std::pair<QVec2, QVec2>& a, const std::pair<QVec2, QVec2>& b);

}  // namespace rotgraph::detail
