#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace rotgraph {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

struct IntVec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr IntVec2 operator+(IntVec2 a, IntVec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr IntVec2 operator-(IntVec2 a, IntVec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr IntVec2 operator-(IntVec2 a) { return {-a.x, -a.y}; }
  friend constexpr IntVec2 operator*(std::int64_t s, IntVec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(IntVec2, IntVec2) = default;
  friend constexpr auto operator<=>(IntVec2, IntVec2) = default;

  constexpr bool is_zero() const { return x == 0 && y == 0; }
  constexpr Vec2 to_real() const { return {static_cast<double>(x), static_cast<double>(y)}; }
};

constexpr std::int64_t det(IntVec2 a, IntVec2 b) { return a.x * b.y - a.y * b.x; }

std::int64_t gcd(std::int64_t a, std::int64_t b);
bool is_primitive(IntVec2 v);

// Bezout coefficients: returns g = gcd(a, b) >= 0 and sets s, t with a*s + b*t = g.
std::int64_t extended_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t);

// Row-major 2x2 integer matrix [[a, b], [c, d]].
struct IntMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static constexpr IntMatrix identity() { return {1, 0, 0, 1}; }

  constexpr std::int64_t det() const { return a * d - b * c; }
  constexpr std::int64_t trace() const { return a + d; }
  constexpr bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

  constexpr IntVec2 operator*(IntVec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  constexpr Vec2 operator*(Vec2 v) const {
    return {static_cast<double>(a) * v.x + static_cast<double>(b) * v.y,
            static_cast<double>(c) * v.x + static_cast<double>(d) * v.y};
  }
  friend constexpr IntMatrix operator*(const IntMatrix& m, const IntMatrix& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend constexpr bool operator==(const IntMatrix&, const IntMatrix&) = default;

  // Inverse over Z; requires |det| = 1.
  IntMatrix inverse() const;
  IntMatrix power(std::int64_t k) const;

  std::string to_string() const;
};

// An element of SL2(Z) sending the primitive vector u to (1, 0).
IntMatrix sl2_to_first_axis(IntVec2 u);

}  // namespace rotgraph
