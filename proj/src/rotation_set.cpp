#include "rotgraph/rotation_set.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "rotgraph/errors.hpp"

namespace rotgraph {

std::string to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Point: return "Point";
    case ShapeKind::Segment: return "Segment";
    case ShapeKind::Interior: return "Interior";
    case ShapeKind::Undetermined: return "Undetermined";
  }
  return "";
}

SlopeLabel label_direction(Vec2 d, const ShapeThresholds& th) {
  SlopeLabel out;
  bool steep = std::abs(d.y) > std::abs(d.x);
  double big = steep ? d.y : d.x;
  if (big == 0.0) return out;
  double x = (steep ? d.x : d.y) / big;
  std::int64_t h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (int term = 0; term < 64; ++term) {
    double a = std::floor(x);
    std::int64_t ai = static_cast<std::int64_t>(a);
    std::int64_t h = ai * h1 + h2, k = ai * k1 + k2;
    out.terms = term + 1;
    if (k > th.max_denominator) return out;
    h2 = h1; h1 = h;
    k2 = k1; k1 = k;
    double rest = x - a;
    if (rest == 0.0 || 1.0 / rest > th.partial_quotient_cutoff) {
      out.rational = true;
      IntVec2 dir = steep ? IntVec2{h, k} : IntVec2{k, h};
      if (dir.x < 0 || (dir.x == 0 && dir.y < 0)) dir = -dir;
      out.direction = dir;
      return out;
    }
    x = 1.0 / rest;
  }
  return out;
}

Shape classify_shape(const ConvexRegion& hull, const ShapeThresholds& th) {
  Shape s;
  s.diameter = hull.diameter();
  s.min_width = hull.min_width();
  s.area = hull.area();
  if (hull.empty()) return s;
  if (s.diameter <= th.point_diameter) {
    s.kind = ShapeKind::Point;
    s.end_a = s.end_b = hull.vertices().front();
    return s;
  }
  if (s.min_width <= th.segment_width) {
    s.kind = ShapeKind::Segment;
    const auto& v = hull.vertices();
    double best = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (double d = norm(v[i] - v[j]); d > best) {
          best = d;
          s.end_a = v[i];
          s.end_b = v[j];
        }
    s.slope = label_direction(s.end_b - s.end_a, th);
    return s;
  }
  if (s.area >= th.interior_area) s.kind = ShapeKind::Interior;
  return s;
}

Vec2 pointwise_rotation(const LiftedMap& f, Vec2 x, std::int64_t n) {
  const IntVec2 deck = f.deck_offset();
  if (deck.is_zero() || f.linear_part() != IntMatrix::identity()) return (iterate(f, n, x) - x) / static_cast<double>(n);
  // An identity-isotopic lift commutes with the deck group, so the offset is counted once
  // instead of being added to the orbit every step.
  return (iterate(LiftedMap(f.primitives()), n, x) - x) / static_cast<double>(n) + deck.to_real();
}

namespace {

Vec2 cell_center(int i, int j, int g) { return {(i + 0.5) / g, (j + 0.5) / g}; }

void check_grid(std::int64_t n, int g) {
  if (n < 1) fail(ErrorCode::Domain, "n must be positive");
  if (g < 2) fail(ErrorCode::Domain, "grid resolution must be at least 2");
}

}  // namespace

std::vector<Vec2> displacement_field_serial(const LiftedMap& f, std::int64_t n, int grid_res) {
  check_grid(n, grid_res);
  std::vector<Vec2> out(static_cast<std::size_t>(grid_res) * grid_res);
  for (int i = 0; i < grid_res; ++i)
    for (int j = 0; j < grid_res; ++j) out[i * grid_res + j] = pointwise_rotation(f, cell_center(i, j, grid_res), n);
  return out;
}

std::vector<Vec2> displacement_field_parallel(const LiftedMap& f, std::int64_t n, int grid_res) {
  check_grid(n, grid_res);
  const int cells = grid_res * grid_res;
  std::vector<Vec2> out(cells);
  std::vector<std::exception_ptr> errors(cells);
#pragma omp parallel for schedule(dynamic, 16)
  for (int c = 0; c < cells; ++c) {
    try {
      out[c] = pointwise_rotation(f, cell_center(c / grid_res, c % grid_res, grid_res), n);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  // Report the lowest failing cell so errors do not depend on scheduling.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

RotSetEstimate mz_estimate(const LiftedMap& f, std::int64_t n, int grid_res, const ShapeThresholds& th) {
  RotSetEstimate est;
  std::vector<Vec2> pts = displacement_field_parallel(f, n, grid_res);
  est.hull = ConvexRegion::hull_of(pts);
  est.n = n;
  est.grid_res = grid_res;
  est.thresholds = th;
  est.shape = classify_shape(est.hull, th);
  est.diagnostics.push_back({n, std::nullopt});
  return est;
}

std::vector<DiagnosticEntry> convergence_diagnostics(const LiftedMap& f, const std::vector<std::int64_t>& schedule,
                                                     int grid_res) {
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1]) fail(ErrorCode::Input, "schedule must be strictly increasing");
  std::vector<DiagnosticEntry> out;
  for (std::int64_t n : schedule) {
    ConvexRegion h = ConvexRegion::hull_of(displacement_field_parallel(f, n, grid_res));
    std::optional<double> delta;
    if (!out.empty()) delta = hausdorff(out.back().hull, h);
    out.push_back({n, std::move(h), delta});
  }
  return out;
}

RotInterval twist_rotation_interval(const CyclicLift& lift, std::int64_t n, int samples) {
  if (n < 1 || samples < 1) fail(ErrorCode::Domain, "twist interval: n and samples must be positive");
  const int cells = samples * samples;
  std::vector<double> rates(cells);
  std::vector<std::exception_ptr> errors(cells);
#pragma omp parallel for schedule(dynamic, 16)
  for (int c = 0; c < cells; ++c) {
    try {
      Vec2 x{static_cast<double>(c / samples) / samples, static_cast<double>(c % samples) / samples};
      rates[c] = (lift.iterate(n, x).y - x.y) / static_cast<double>(n);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
  return {*lo, *hi};
}

}  // namespace rotgraph
