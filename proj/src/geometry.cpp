#include "rotgraph/geometry.hpp"

#include <cstdlib>
#include <sstream>

#include "rotgraph/errors.hpp"

namespace rotgraph {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    std::int64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

bool is_primitive(IntVec2 v) { return gcd(v.x, v.y) == 1; }

std::int64_t extended_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1; r0 = r1; r1 = tmp;
    tmp = s0 - q * s1; s0 = s1; s1 = tmp;
    tmp = t0 - q * t1; t0 = t1; t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0; s0 = -s0; t0 = -t0;
  }
  s = s0;
  t = t0;
  return r0;
}

IntMatrix IntMatrix::inverse() const {
  std::int64_t dt = det();
  if (dt != 1 && dt != -1) fail(ErrorCode::Domain, "matrix " + to_string() + " is not invertible over Z");
  return {d * dt, -b * dt, -c * dt, a * dt};
}

IntMatrix IntMatrix::power(std::int64_t k) const {
  IntMatrix base = k < 0 ? inverse() : *this;
  if (k < 0) k = -k;
  IntMatrix out = identity();
  while (k > 0) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

IntMatrix sl2_to_first_axis(IntVec2 u) {
  std::int64_t s = 0, t = 0;
  if (extended_gcd(u.x, u.y, s, t) != 1) fail(ErrorCode::Domain, "class is not primitive");
  // [[s, t], [-u.y, u.x]] has det s*u.x + t*u.y = 1 and sends u to (1, 0).
  return {s, t, -u.y, u.x};
}

}  // namespace rotgraph
