#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rotgraph/curve.hpp"
#include "rotgraph/fine_graph.hpp"
#include "rotgraph/rotation_set.hpp"
#include "rotgraph/torus_map.hpp"

namespace rotgraph {

enum class Verdict { Hyperbolic, ParabolicConsistent, EllipticConsistent, EllipticCertified, Undetermined };
enum class Route { AnosovTrace, TwistInterval, IdentityIsotopicRotSet };

std::string to_string(Verdict v);
std::string to_string(Route r);

struct ClassifyParams {
  std::int64_t n = 500;
  int grid_res = 64;
  ShapeThresholds thresholds;
  std::int64_t trap_n_max = 5;
  int trap_samples = 256;
  // Annuli tried before the searched ones, as (lower, upper) boundary pairs.
  std::vector<std::pair<PLCurve, PLCurve>> annuli;
  bool search_annuli = true;
  // A segment whose diameter falls below this fraction of its diameter at n / 4 is read as a shrinking point.
  double point_trend_ratio = 0.5;
};

struct RationalPoint {
  std::int64_t p1, p2, q;
  double distance;
};

struct CrossSample {
  std::int64_t n;
  std::int64_t value;
};

struct CrossCheck {
  std::string channel;  // crossing or farey
  std::vector<std::int64_t> curve_class;
  std::vector<CrossSample> samples;
  std::optional<double> fit_exponent;
  std::int64_t max_value = 0;
  std::optional<TranslationLengthBounds> translation_length;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  bool consistent() const { return violations.empty(); }
};

struct ClassificationReport {
  Verdict verdict = Verdict::Undetermined;
  Route route = Route::IdentityIsotopicRotSet;
  IsotopyClass isotopy;
  int power_applied = 1;  // the evidence describes F^power_applied
  std::optional<RotSetEstimate> estimate;
  std::optional<RotInterval> interval;
  std::optional<RationalPoint> rational_point;
  std::optional<EllipticCertificate> certificate;
  std::optional<double> area_budget;
  // Hull diameter at n over hull diameter at n / 4, recorded for segment-shaped estimates.
  std::optional<double> shrink_ratio;
  std::optional<CrossCheck> cross_check;
  std::string reason;
  ClassifyParams params;
};

ClassificationReport classify(const LiftedMap& f, const ClassifyParams& params = {});

// Largest translation length compatible with the area of an Interior-shaped estimate.
double area_budget(const RotSetEstimate& e);
double area_budget(double area);

struct CrossCheckOptions {
  std::vector<std::int64_t> schedule = {1, 2, 5, 10, 20, 50, 100, 200};
  std::vector<std::int64_t> hyperbolic_schedule = {1, 2, 3, 4};
  std::int64_t bounded_limit = 4;  // crossing numbers allowed for elliptic verdicts
  int res = 64;
  double max_chord = 0.0;
};

// Measured crossing (or Farey) growth of iterates of a against the verdict. Violations are
// recorded, never thrown.
CrossCheck cross_check(const LiftedMap& f, const ClassificationReport& report, const PLCurve& a,
                       const CrossCheckOptions& opts = {});

// Least-squares slope of log value against log n over the positive samples.
std::optional<double> fit_exponent(const std::vector<CrossSample>& samples);

// First rational point (p1/q, p2/q), q ascending, within tol of the segment [a, b].
std::optional<RationalPoint> find_rational_point(Vec2 a, Vec2 b, std::int64_t max_q, double tol);

}  // namespace rotgraph
