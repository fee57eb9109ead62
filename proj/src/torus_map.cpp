#include "rotgraph/torus_map.hpp"

#include <cmath>

#include "overloaded.hpp"
#include "rotgraph/errors.hpp"

namespace rotgraph {

using detail::overloaded;

namespace {

bool is_integral(double v) { return std::isfinite(v) && std::floor(v) == v && std::abs(v) < 1e15; }

void check_shear(const Profile& p, double strength, const char* what) {
  if (!std::isfinite(strength)) fail(ErrorCode::Input, std::string(what) + ": non-finite strength");
  if (p.degree() != 0 && !is_integral(strength * p.degree()))
    fail(ErrorCode::Input, std::string(what) + ": degree-one profile needs an integer strength");
}

}  // namespace

Vec2 apply(const Primitive& prim, Vec2 p) {
  return std::visit(overloaded{
                        [p](const Translation& t) { return p + t.v; },
                        [p](const Linear& l) { return l.m * p; },
                        [p](const ShearX& s) { return Vec2{p.x + s.strength * s.profile(p.y), p.y}; },
                        [p](const ShearY& s) { return Vec2{p.x, p.y + s.strength * s.profile(p.x)}; },
                        [p](const VerticalFlow& v) { return Vec2{p.x, p.y + v.time * v.field(p.x)}; },
                        [p](const Custom& c) { return c.impl->apply(p); },
                    },
                    prim);
}

IntMatrix linear_part(const Primitive& prim) {
  return std::visit(overloaded{
                        [](const Translation&) { return IntMatrix::identity(); },
                        [](const Linear& l) { return l.m; },
                        [](const ShearX& s) {
                          return IntMatrix{1, static_cast<std::int64_t>(s.strength * s.profile.degree()), 0, 1};
                        },
                        [](const ShearY& s) {
                          return IntMatrix{1, 0, static_cast<std::int64_t>(s.strength * s.profile.degree()), 1};
                        },
                        [](const VerticalFlow& v) {
                          return IntMatrix{1, 0, static_cast<std::int64_t>(v.time * v.field.degree()), 1};
                        },
                        [](const Custom& c) { return c.impl->linear_part(); },
                    },
                    prim);
}

void validate(const Primitive& prim) {
  std::visit(overloaded{
                 [](const Translation& t) {
                   if (!is_finite(t.v)) fail(ErrorCode::Input, "translation: non-finite vector");
                 },
                 [](const Linear& l) {
                   auto d = l.m.det();
                   if (d != 1 && d != -1) fail(ErrorCode::Input, "linear: determinant must be +-1, got " + std::to_string(d));
                 },
                 [](const ShearX& s) { check_shear(s.profile, s.strength, "shear_x"); },
                 [](const ShearY& s) { check_shear(s.profile, s.strength, "shear_y"); },
                 [](const VerticalFlow& v) { check_shear(v.field, v.time, "vertical_flow"); },
                 [](const Custom& c) {
                   if (!c.impl) fail(ErrorCode::Input, "custom: empty primitive");
                 },
             },
             prim);
}

LiftedMap::LiftedMap(std::vector<Primitive> primitives, IntVec2 deck_offset)
    : primitives_(std::move(primitives)), deck_offset_(deck_offset) {
  for (const auto& p : primitives_) validate(p);
}

Vec2 LiftedMap::operator()(Vec2 p) const {
  for (const auto& prim : primitives_) p = apply(prim, p);
  if (!deck_offset_.is_zero()) p += deck_offset_.to_real();
  return p;
}

IntMatrix LiftedMap::linear_part() const {
  IntMatrix a = IntMatrix::identity();
  for (const auto& prim : primitives_) a = rotgraph::linear_part(prim) * a;
  return a;
}

LiftedMap identity_map() { return LiftedMap{}; }
LiftedMap translation(Vec2 v) { return LiftedMap({Translation{v}}); }
LiftedMap linear(IntMatrix m) { return LiftedMap({Linear{m}}); }
LiftedMap shear_x(Profile p, double strength) { return LiftedMap({ShearX{std::move(p), strength}}); }
LiftedMap shear_y(Profile p, double strength) { return LiftedMap({ShearY{std::move(p), strength}}); }
LiftedMap vertical_flow(Profile field, double time) { return LiftedMap({VerticalFlow{std::move(field), time}}); }
LiftedMap custom(std::shared_ptr<const CustomPrimitive> impl) { return LiftedMap({Custom{std::move(impl)}}); }

Vec2 eval(const LiftedMap& f, Vec2 p) {
  if (!is_finite(p)) fail(ErrorCode::Domain, "eval: non-finite input coordinate");
  return f(p);
}

LiftedMap compose(const LiftedMap& f, const LiftedMap& g) {
  std::vector<Primitive> chain = g.primitives();
  if (!g.deck_offset().is_zero()) chain.emplace_back(Translation{g.deck_offset().to_real()});
  chain.insert(chain.end(), f.primitives().begin(), f.primitives().end());
  return LiftedMap(std::move(chain), f.deck_offset());
}

LiftedMap power(const LiftedMap& f, int q) {
  if (q < 1) fail(ErrorCode::Domain, "power: exponent must be positive");
  LiftedMap out = f;
  for (int i = 1; i < q; ++i) out = compose(f, out);
  return out;
}

Vec2 iterate(const LiftedMap& f, std::int64_t n, Vec2 p) {
  if (n < 1) fail(ErrorCode::Domain, "iterate: n must be positive");
  if (!is_finite(p)) fail(ErrorCode::Domain, "iterate: non-finite input coordinate");
  for (std::int64_t i = 0; i < n; ++i) {
    p = f(p);
    if (!(std::abs(p.x) <= kDivergenceBound && std::abs(p.y) <= kDivergenceBound))
      fail(ErrorCode::Divergence, "iterate: coordinates left the 1e15 box at step " + std::to_string(i + 1));
  }
  return p;
}

LiftedMap deck_adjust(const LiftedMap& f, IntVec2 p) { return LiftedMap(f.primitives(), f.deck_offset() + p); }

LiftedMap conjugate(const LiftedMap& f, const IntMatrix& a) {
  auto d = a.det();
  if (d != 1 && d != -1) fail(ErrorCode::Domain, "conjugate: invalid conjugator " + a.to_string());
  std::vector<Primitive> chain;
  chain.reserve(f.primitives().size() + 3);
  chain.emplace_back(Linear{a.inverse()});
  chain.insert(chain.end(), f.primitives().begin(), f.primitives().end());
  if (!f.deck_offset().is_zero()) chain.emplace_back(Translation{f.deck_offset().to_real()});
  chain.emplace_back(Linear{a});
  return LiftedMap(std::move(chain));
}

std::string to_string(IsotopyClass::Kind kind) {
  switch (kind) {
    case IsotopyClass::Kind::IdentityIsotopic: return "IdentityIsotopic";
    case IsotopyClass::Kind::TwistPower: return "TwistPower";
    case IsotopyClass::Kind::Anosov: return "Anosov";
    case IsotopyClass::Kind::FiniteOrder: return "FiniteOrder";
  }
  return "";
}

IsotopyClass classify_matrix(const IntMatrix& a) {
  if (a.det() != 1) fail(ErrorCode::Unsupported, "orientation-reversing linear part " + a.to_string());
  IsotopyClass out;
  out.linear = a;
  auto tr = a.trace();
  if (a.is_identity()) return out;
  if (tr > 2 || tr < -2) {
    out.kind = IsotopyClass::Kind::Anosov;
    return out;
  }
  if ((tr == 2 || tr == -2) && !(a == IntMatrix{-1, 0, 0, -1})) {
    IntMatrix u = tr == 2 ? a : IntMatrix{-a.a, -a.b, -a.c, -a.d};
    out.negated = tr == -2;
    IntVec2 col1{u.a - 1, u.c};
    IntVec2 col2{u.b, u.d - 1};
    IntVec2 v = col1.is_zero() ? col2 : col1;
    auto g = gcd(v.x, v.y);
    v = {v.x / g, v.y / g};
    if (v.x < 0 || (v.x == 0 && v.y < 0)) v = -v;
    // (U - I) e = r det(v, e) v for a basis vector e transverse to v.
    IntVec2 e = v.y != 0 ? IntVec2{1, 0} : IntVec2{0, 1};
    IntVec2 ne = e.x == 1 ? col1 : col2;
    auto de = det(v, e);
    auto r = v.x != 0 ? ne.x / (de * v.x) : ne.y / (de * v.y);
    out.kind = IsotopyClass::Kind::TwistPower;
    out.curve_class = v;
    out.power = r;
    return out;
  }
  out.kind = IsotopyClass::Kind::FiniteOrder;
  IntMatrix p = a;
  for (int k = 1; k <= 12; ++k) {
    if (p.is_identity()) {
      out.order = k;
      return out;
    }
    p = p * a;
  }
  fail(ErrorCode::Internal, "finite-order matrix without a small order: " + a.to_string());
}

IsotopyClass isotopy_class(const LiftedMap& f) { return classify_matrix(f.linear_part()); }

CyclicLift::CyclicLift(LiftedMap conjugated, IntMatrix conjugator, std::int64_t twist_power)
    : base_(std::move(conjugated)), conjugator_(conjugator), twist_power_(twist_power) {}

Vec2 CyclicLift::step(Vec2 p) const {
  Vec2 q = base_(p);
  q.x -= std::floor(q.x);
  return q;
}

Vec2 CyclicLift::iterate(std::int64_t n, Vec2 p) const {
  if (n < 1) fail(ErrorCode::Domain, "iterate: n must be positive");
  for (std::int64_t i = 0; i < n; ++i) {
    p = step(p);
    if (!(std::abs(p.y) <= kDivergenceBound)) fail(ErrorCode::Divergence, "cyclic lift left the 1e15 box");
  }
  return p;
}

CyclicLift cyclic_lift(const LiftedMap& f) {
  IsotopyClass c = isotopy_class(f);
  switch (c.kind) {
    case IsotopyClass::Kind::IdentityIsotopic: return CyclicLift(f, IntMatrix::identity(), 0);
    case IsotopyClass::Kind::TwistPower: {
      if (c.negated) fail(ErrorCode::Inapplicable, "cyclic lift: linear part is minus a twist; square the map first");
      IntMatrix conj = sl2_to_first_axis(c.curve_class);
      LiftedMap g = conjugate(f, conj);
      IntMatrix m = g.linear_part();
      if (!(m.a == 1 && m.c == 0 && m.d == 1)) fail(ErrorCode::Internal, "cyclic lift: conjugation did not normalize the twist");
      return CyclicLift(std::move(g), conj, m.b);
    }
    default: fail(ErrorCode::Inapplicable, "cyclic lift: map is not isotopic to a twist power or the identity");
  }
}

}  // namespace rotgraph
