#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rotgraph/geometry.hpp"
#include "rotgraph/profile.hpp"

namespace rotgraph {

struct Translation {
  Vec2 v;
};

struct Linear {
  IntMatrix m;
};

// (x, y) -> (x + strength * profile(y), y)
struct ShearX {
  Profile profile;
  double strength = 1.0;
};

// (x, y) -> (x, y + strength * profile(x))
struct ShearY {
  Profile profile;
  double strength = 1.0;
};

// (x, y) -> (x, y + time * field(x)); the time-t map of a vertical flow with speed field(x).
struct VerticalFlow {
  Profile field;
  double time = 1.0;
};

// Named extension point used by the gallery for maps that are not a chain of the
// closed-form primitives. Implementations must commute with Z^2 translations up to
// their linear part and be immutable after construction.
class CustomPrimitive {
public:
  virtual ~CustomPrimitive() = default;
  virtual std::string name() const = 0;
  virtual nlohmann::json params() const = 0;
  virtual Vec2 apply(Vec2 p) const = 0;
  virtual IntMatrix linear_part() const { return IntMatrix::identity(); }
};

struct Custom {
  std::shared_ptr<const CustomPrimitive> impl;
};

using Primitive = std::variant<Translation, Linear, ShearX, ShearY, VerticalFlow, Custom>;

Vec2 apply(const Primitive& prim, Vec2 p);
IntMatrix linear_part(const Primitive& prim);
// Throws Input when a primitive cannot be a homeomorphism commuting with the lattice.
void validate(const Primitive& prim);

class LiftedMap {
public:
  LiftedMap() = default;
  explicit LiftedMap(std::vector<Primitive> primitives, IntVec2 deck_offset = {});

  const std::vector<Primitive>& primitives() const { return primitives_; }
  IntVec2 deck_offset() const { return deck_offset_; }

  // Evaluation without the finiteness guard; used by inner loops.
  Vec2 operator()(Vec2 p) const;
  // Product of the primitives' linear parts in application order.
  IntMatrix linear_part() const;

private:
  std::vector<Primitive> primitives_;
  IntVec2 deck_offset_;
};

LiftedMap identity_map();
LiftedMap translation(Vec2 v);
LiftedMap linear(IntMatrix m);
LiftedMap shear_x(Profile p, double strength);
LiftedMap shear_y(Profile p, double strength);
LiftedMap vertical_flow(Profile field, double time);
LiftedMap custom(std::shared_ptr<const CustomPrimitive> impl);

inline constexpr double kDivergenceBound = 1e15;

Vec2 eval(const LiftedMap& f, Vec2 p);
// f after g.
LiftedMap compose(const LiftedMap& f, const LiftedMap& g);
// f composed with itself q times, as a single chain.
LiftedMap power(const LiftedMap& f, int q);
Vec2 iterate(const LiftedMap& f, std::int64_t n, Vec2 p);
LiftedMap deck_adjust(const LiftedMap& f, IntVec2 p);
// A o f o A^{-1}.
LiftedMap conjugate(const LiftedMap& f, const IntMatrix& a);

struct IsotopyClass {
  enum class Kind { IdentityIsotopic, TwistPower, Anosov, FiniteOrder };
  Kind kind = Kind::IdentityIsotopic;
  IntMatrix linear;
  // TwistPower: (A - I) x = power * det(curve_class, x) * curve_class, for A or -A when negated.
  IntVec2 curve_class;
  std::int64_t power = 0;
  bool negated = false;
  // FiniteOrder: smallest k with A^k = I.
  int order = 1;
};

std::string to_string(IsotopyClass::Kind kind);
IsotopyClass isotopy_class(const LiftedMap& f);
IsotopyClass classify_matrix(const IntMatrix& a);

// The induced map on the annulus R/Z x R after conjugating the twist class to (1, 0).
class CyclicLift {
public:
  CyclicLift(LiftedMap conjugated, IntMatrix conjugator, std::int64_t twist_power);

  const LiftedMap& base() const { return base_; }
  const IntMatrix& conjugator() const { return conjugator_; }
  std::int64_t twist_power() const { return twist_power_; }

  // One step with the first coordinate reduced to [0, 1).
  Vec2 step(Vec2 p) const;
  Vec2 iterate(std::int64_t n, Vec2 p) const;

private:
  LiftedMap base_;
  IntMatrix conjugator_;
  std::int64_t twist_power_;
};

CyclicLift cyclic_lift(const LiftedMap& f);

}  // namespace rotgraph
