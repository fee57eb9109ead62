#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "rotgraph/geometry.hpp"

namespace rotgraph {

using Rational = mpq_class;

struct QVec2 {
  Rational x, y;

  QVec2() = default;
  QVec2(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  explicit QVec2(IntVec2 v) : x(static_cast<long>(v.x)), y(static_cast<long>(v.y)) {}

  Vec2 approx() const { return {x.get_d(), y.get_d()}; }

  friend QVec2 operator+(const QVec2& a, const QVec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend QVec2 operator-(const QVec2& a, const QVec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend QVec2 operator-(const QVec2& a) { return {-a.x, -a.y}; }
  friend QVec2 operator*(const Rational& s, const QVec2& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const QVec2& a, const QVec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const QVec2& a, const QVec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

Rational cross(const QVec2& a, const QVec2& b);
Rational dot(const QVec2& a, const QVec2& b);
QVec2 operator+(const QVec2& a, IntVec2 t);

Rational from_int(std::int64_t v);
// Largest integer <= q.
std::int64_t floor_to_int(const Rational& q);
// Representative of the point in [0, 1)^2.
QVec2 reduce_mod_one(const QVec2& p);

// Closest rational to v with denominator at most max_den (ties to the smaller denominator).
Rational limit_denominator(double v, std::int64_t max_den);
Rational limit_denominator(const Rational& v, std::int64_t max_den);

// "p/q", "p", or a decimal literal such as "-0.25".
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

}  // namespace rotgraph
