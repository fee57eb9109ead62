#include "rotgraph/rational.hpp"

#include <cctype>
#include <cmath>

#include "rotgraph/errors.hpp"

namespace rotgraph {

Rational cross(const QVec2& a, const QVec2& b) { return a.x * b.y - a.y * b.x; }
Rational dot(const QVec2& a, const QVec2& b) { return a.x * b.x + a.y * b.y; }

QVec2 operator+(const QVec2& a, IntVec2 t) {
  if (t.is_zero()) return a;
  return {a.x + static_cast<long>(t.x), a.y + static_cast<long>(t.y)};
}

Rational from_int(std::int64_t v) { return Rational(static_cast<long>(v)); }

std::int64_t floor_to_int(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!f.fits_slong_p()) fail(ErrorCode::Domain, "rational out of 64-bit range");
  return f.get_si();
}

QVec2 reduce_mod_one(const QVec2& p) {
  return {p.x - from_int(floor_to_int(p.x)), p.y - from_int(floor_to_int(p.y))};
}

Rational limit_denominator(const Rational& v, std::int64_t max_den) {
  if (max_den < 1) fail(ErrorCode::Domain, "limit_denominator: bound must be positive");
  mpz_class bound(static_cast<long>(max_den));
  if (v.get_den() <= bound) return v;
  // Continued-fraction convergents with the final semiconvergent, as in the classical algorithm.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class n = v.get_num(), d = v.get_den();
  for (;;) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    mpz_class q2 = q0 + a * q1;
    if (q2 > bound) break;
    mpz_class p2 = p0 + a * p1;
    p0 = p1; q0 = q1;
    p1 = p2; q1 = q2;
    mpz_class r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }
  mpz_class k = (bound - q0) / q1;
  Rational b1(mpz_class(p0 + k * p1), mpz_class(q0 + k * q1));
  Rational b2(p1, q1);
  b1.canonicalize();
  b2.canonicalize();
  return abs(b2 - v) <= abs(b1 - v) ? b2 : b1;
}

Rational limit_denominator(double v, std::int64_t max_den) {
  if (!std::isfinite(v)) fail(ErrorCode::Domain, "limit_denominator: non-finite value");
  Rational exact(v);
  return limit_denominator(exact, max_den);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) fail(ErrorCode::Input, "empty rational");
  auto bad = [&] { fail(ErrorCode::Input, "invalid rational '" + s + "'"); };
  auto digits_ok = [](std::string_view t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string t) { return !t.empty() && t[0] == '+' ? t.substr(1) : t; };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) bad();
    mpz_class d(den, 10);
    if (d == 0) fail(ErrorCode::Input, "zero denominator in '" + s + "'");
    Rational q(mpz_class(strip_plus(num), 10), d);
    q.canonicalize();
    return q;
  }
  if (auto dotp = s.find('.'); dotp != std::string::npos) {
    std::string ip = s.substr(0, dotp), fp = s.substr(dotp + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    if (!digits_ok(ip, false) || (!fp.empty() && !digits_ok(fp, false))) bad();
    mpz_class den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    Rational q(mpz_class(ip + fp, 10), den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  if (!digits_ok(s, true)) bad();
  return Rational(mpz_class(strip_plus(s), 10));
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace rotgraph
