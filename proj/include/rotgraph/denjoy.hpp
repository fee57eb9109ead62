#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "rotgraph/geometry.hpp"
#include "rotgraph/torus_map.hpp"

namespace rotgraph {

struct DenjoyParams {
  double alpha = 0.6180339887498949;  // (sqrt 5 - 1) / 2
  std::int64_t k_max = 10000;
};

// Lifted Denjoy circle map built by blowing up the orbit k*alpha, |k| <= k_max, into gaps of
// width c / (k^2 + 1). Gap k maps affinely onto gap k + 1; the last gap collapses to a point.
// Immutable after construction.
class DenjoyMap {
public:
  explicit DenjoyMap(DenjoyParams params = {});

  const DenjoyParams& params() const { return params_; }
  double alpha() const { return params_.alpha; }
  std::int64_t k_max() const { return params_.k_max; }

  // Weight of gap k (zero outside the truncation).
  double weight(std::int64_t k) const;
  static double weight_constant();
  // Sum of the weights beyond the truncation.
  double tail_error() const;
  double cantor_coefficient() const { return sigma_; }

  struct Gap {
    std::int64_t k;
    double theta;  // orbit point on the base circle
    double left;   // in [0, 1)
    double width;
  };
  // Gaps sorted by position.
  const std::vector<Gap>& gaps() const { return gaps_; }
  const Gap& gap(std::int64_t k) const;

  // Gap containing x mod 1 (closed interval), if any.
  std::optional<std::size_t> gap_at(double x) const;
  // Monotone map collapsing each gap to its orbit point; h(x + 1) = h(x) + 1.
  double collapse(double x) const;
  // Lifted blow-up coordinate A with A(theta + 1) = A(theta) + 1.
  double blow_up(double theta) const;

  double eval(double x) const;                        // lifted D
  double eval_interp(double s, double x) const;       // (1 - s) x + s D(x)
  double invert_interp(double s, double y) const;     // exact piecewise-linear inverse

private:
  struct Break {
    double x;
    double value_left;   // left limit of D
    double value_right;  // right limit of D
  };
  double start_value(double s, std::size_t i) const;
  double end_value(double s, std::size_t i) const;
  double break_x(std::size_t i) const;

  DenjoyParams params_;
  double sigma_ = 0.5;
  std::vector<Gap> gaps_;
  std::vector<std::size_t> by_k_;         // index into gaps_ by k + k_max
  std::vector<double> prefix_;            // prefix_[i] = total width of gaps_[0..i)
  std::vector<Break> breaks_;
};

// Transport between suspension coordinates (x, t) of the mapping torus of D and standard
// coordinates: (x, t) -> (D_t(x), t) on each unit height interval.
struct SuspensionPoint {
  double x;               // lifted circle coordinate at height level
  std::int64_t level;     // floor of the standard height
  double height;          // in [0, 1)
};

SuspensionPoint to_suspension(const DenjoyMap& d, Vec2 p);
Vec2 from_suspension(const DenjoyMap& d, const SuspensionPoint& q);

// Position of a suspension point inside the wandering strip: gap index, relative position
// across the gap and global strip height t = k + height.
struct StripCoordinate {
  std::int64_t k;
  double u;
  double t;
};
std::optional<StripCoordinate> strip_coordinate(const DenjoyMap& d, const SuspensionPoint& q);

// Parabolic example: identity on the Cantor suspension, (u, t) -> (u, t + eps sin^2(pi u) e^{-|t|})
// on the strip.
class DenjoyParabolic final : public CustomPrimitive {
public:
  DenjoyParabolic(std::shared_ptr<const DenjoyMap> map, double epsilon = 0.5);
  std::string name() const override { return "denjoy_parabolic"; }
  nlohmann::json params() const override;
  Vec2 apply(Vec2 p) const override;

  const DenjoyMap& denjoy() const { return *map_; }
  double epsilon() const { return epsilon_; }
  // The map in suspension coordinates.
  SuspensionPoint apply_suspension(const SuspensionPoint& q) const;

private:
  std::shared_ptr<const DenjoyMap> map_;
  double epsilon_;
};

// Time-one map of the suspension flow slowed by 1 - chi, chi = min(1, distance to the Cantor
// suspension / cap) measured across the strip.
class DenjoyFlow final : public CustomPrimitive {
public:
  DenjoyFlow(std::shared_ptr<const DenjoyMap> map, double time = 1.0);
  std::string name() const override { return "denjoy_irrational_flow"; }
  nlohmann::json params() const override;
  Vec2 apply(Vec2 p) const override;

  const DenjoyMap& denjoy() const { return *map_; }
  double time() const { return time_; }
  double cap() const { return cap_; }
  // chi at a suspension point inside gap k with relative position u.
  double slowdown(std::int64_t k, double u, double height) const;
  SuspensionPoint flow_suspension(const SuspensionPoint& q, double tau) const;

private:
  std::shared_ptr<const DenjoyMap> map_;
  double time_;
  double cap_;
};

}  // namespace rotgraph
