#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotgraph/curve.hpp"
#include "rotgraph/torus_map.hpp"

namespace rotgraph {

// Disjoint or crossing transversely exactly once. Throws NonGeneric on tangency.
bool adjacent(const PLCurve& a, const PLCurve& b);

struct CertifiedPath {
  std::vector<PLCurve> curves;  // from the second input (b) to the first (a)
  std::int64_t bound() const { return static_cast<std::int64_t>(curves.size()) - 1; }
};

struct PathCheck {
  bool valid = true;
  std::optional<std::size_t> failing_step;  // pair (step, step + 1)
  std::string reason;
};

// Exact re-validation: every curve simple and essential, consecutive curves adjacent,
// and the endpoints equal to the given curves when provided.
PathCheck verify_path(const CertifiedPath& path, const PLCurve* from = nullptr, const PLCurve* to = nullptr);

struct SurgeryResult {
  PLCurve curve;                   // fewer intersections with a than b had
  std::optional<PLCurve> middle;   // present when curve is not adjacent to b directly
  std::size_t count_before = 0;
  std::size_t count_after = 0;
};

SurgeryResult surgery_step_detailed(const PLCurve& a, const PLCurve& b);
inline PLCurve surgery_step(const PLCurve& a, const PLCurve& b) { return surgery_step_detailed(a, b).curve; }

struct DistanceBounds {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::optional<CertifiedPath> certificate;
  std::size_t intersections = 0;
};

DistanceBounds upper_bound_by_intersection(const PLCurve& a, const PLCurve& b);
std::int64_t crossing_upper_bound(const PLCurve& a, const PLCurve& b);
std::int64_t farey_lower_bound(const PLCurve& a, const PLCurve& b);

struct TranslationLengthRow {
  std::int64_t n = 0;
  std::int64_t count = 0;       // crossing number (isotopic images) or intersection count
  std::int64_t farey = 0;
  double upper = 0.0;
  double lower = 0.0;
  std::string method;           // crossing, surgery, intersection_formula
};

struct TranslationLengthBounds {
  double upper = 0.0;
  double lower = 0.0;
  std::vector<TranslationLengthRow> trace;
};

struct TranslationLengthOptions {
  std::vector<std::int64_t> schedule;  // iterate counts; empty means 1..n_max
  std::int64_t n_max = 10;
  int res = 64;
  double max_chord = 0.0;
  std::size_t surgery_limit = 20;      // constructive surgery only below this many intersections
};

TranslationLengthBounds translation_length_bounds(const LiftedMap& f, const PLCurve& a,
                                                  const TranslationLengthOptions& opts);

struct EllipticCertificate {
  PLCurve lower;   // boundary curves of the annulus
  PLCurve upper;
  std::int64_t n = 1;
  double margin = 0.0;
  std::int64_t samples = 0;
  std::string label = "numeric evidence";
};

inline constexpr double kTrapMargin = 10.0 / 1e9;

// Searches N = 1..n_max for F^N mapping the closed annulus between the boundary curves into
// its interior. The annulus is the region above `lower` and below the next lift of `upper`
// in the chart where their class is (1, 0).
std::optional<EllipticCertificate> annulus_trap_certificate(const LiftedMap& f, const PLCurve& lower,
                                                            const PLCurve& upper, std::int64_t n_max,
                                                            int sample_res = 256);

}  // namespace rotgraph
