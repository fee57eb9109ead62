#include "rotgraph/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "rotgraph/errors.hpp"
#include "rotgraph/farey.hpp"
#include "rotgraph/rational.hpp"

namespace rotgraph {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Hyperbolic: return "Hyperbolic";
    case Verdict::ParabolicConsistent: return "ParabolicConsistent";
    case Verdict::EllipticConsistent: return "EllipticConsistent";
    case Verdict::EllipticCertified: return "EllipticCertified";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::string to_string(Route r) {
  switch (r) {
    case Route::AnosovTrace: return "AnosovTrace";
    case Route::TwistInterval: return "TwistInterval";
    case Route::IdentityIsotopicRotSet: return "IdentityIsotopicRotSet";
  }
  return "IdentityIsotopicRotSet";
}

double area_budget(double area) {
  if (!(area >= 0.0)) fail(ErrorCode::Domain, "area_budget: negative area");
  return std::sqrt(8.0 * area / std::sqrt(3.0));
}

double area_budget(const RotSetEstimate& e) {
  if (e.shape.kind != ShapeKind::Interior)
    fail(ErrorCode::Inapplicable, "area_budget needs an Interior-shaped estimate, got " + to_string(e.shape.kind));
  return area_budget(e.shape.area);
}

std::optional<RationalPoint> find_rational_point(Vec2 a, Vec2 b, std::int64_t max_q, double tol) {
  const double xlo = std::min(a.x, b.x) - tol, xhi = std::max(a.x, b.x) + tol;
  const double ylo = std::min(a.y, b.y) - tol, yhi = std::max(a.y, b.y) + tol;
  for (std::int64_t q = 1; q <= max_q; ++q) {
    const double qd = static_cast<double>(q);
    auto p1_lo = static_cast<std::int64_t>(std::ceil(xlo * qd)), p1_hi = static_cast<std::int64_t>(std::floor(xhi * qd));
    auto p2_lo = static_cast<std::int64_t>(std::ceil(ylo * qd)), p2_hi = static_cast<std::int64_t>(std::floor(yhi * qd));
    for (std::int64_t p1 = p1_lo; p1 <= p1_hi; ++p1)
      for (std::int64_t p2 = p2_lo; p2 <= p2_hi; ++p2) {
        if (gcd(gcd(p1, p2), q) != 1) continue;
        Vec2 pt{static_cast<double>(p1) / qd, static_cast<double>(p2) / qd};
        double d = point_segment_distance(pt, a, b);
        if (d <= tol) return RationalPoint{p1, p2, q, d};
      }
  }
  return std::nullopt;
}

namespace {

// Upgrades the verdict when some candidate annulus is mapped into its own interior.
void try_annulus_traps(const LiftedMap& g, const ClassifyParams& params, ClassificationReport& rep) {
  std::vector<std::pair<PLCurve, PLCurve>> annuli = params.annuli;
  if (params.search_annuli) {
    Rational q1(1, 4), q3(3, 4);
    annuli.emplace_back(horizontal_curve(q1), horizontal_curve(q3));
    annuli.emplace_back(horizontal_curve(q3), horizontal_curve(q1));
    annuli.emplace_back(vertical_curve(q1), vertical_curve(q3));
    annuli.emplace_back(vertical_curve(q3), vertical_curve(q1));
  }
  for (const auto& [lo, up] : annuli) {
    auto cert = annulus_trap_certificate(g, lo, up, params.trap_n_max, params.trap_samples);
    if (cert) {
      rep.verdict = Verdict::EllipticCertified;
      rep.certificate = std::move(cert);
      rep.reason = "annulus mapped into its interior";
      return;
    }
  }
}

// A genuine segment keeps its length as n grows; a hull still contracting toward a point does not.
std::optional<double> shrink_ratio(const LiftedMap& g, const ClassifyParams& params, const RotSetEstimate& est) {
  if (params.n < 8) return std::nullopt;
  auto early = mz_estimate(g, params.n / 4, params.grid_res, params.thresholds);
  const double d0 = early.hull.diameter();
  if (d0 <= 0.0) return std::nullopt;
  return est.hull.diameter() / d0;
}

void classify_rotation_set(const LiftedMap& g, const ClassifyParams& params, ClassificationReport& rep) {
  const ShapeThresholds& th = params.thresholds;
  rep.estimate = mz_estimate(g, params.n, params.grid_res, th);
  const Shape& shape = rep.estimate->shape;
  if (shape.kind == ShapeKind::Segment) {
    rep.shrink_ratio = shrink_ratio(g, params, *rep.estimate);
    if (rep.shrink_ratio && *rep.shrink_ratio < params.point_trend_ratio) {
      rep.verdict = Verdict::Undetermined;
      rep.reason = "segment-shaped estimate still contracting toward a point";
      try_annulus_traps(g, params, rep);
      return;
    }
  }
  switch (shape.kind) {
    case ShapeKind::Interior:
      rep.verdict = Verdict::Hyperbolic;
      rep.area_budget = area_budget(*rep.estimate);
      rep.reason = "rotation set estimate has non-empty interior";
      return;
    case ShapeKind::Segment:
      if (!shape.slope.rational) {
        rep.verdict = Verdict::ParabolicConsistent;
        rep.reason = "segment of irrational-consistent slope";
        return;
      }
      rep.rational_point = find_rational_point(shape.end_a, shape.end_b, th.rational_point_denominator,
                                               2.0 * th.segment_width);
      if (rep.rational_point) {
        rep.verdict = Verdict::EllipticConsistent;
        rep.reason = "segment of rational slope containing a rational point";
      } else {
        rep.verdict = Verdict::Undetermined;
        rep.reason = "segment of rational slope without a small-denominator rational point";
      }
      try_annulus_traps(g, params, rep);
      return;
    case ShapeKind::Point:
      rep.verdict = Verdict::Undetermined;
      rep.reason = "point-shaped rotation set estimate";
      try_annulus_traps(g, params, rep);
      return;
    case ShapeKind::Undetermined:
      rep.verdict = Verdict::Undetermined;
      rep.reason = "rotation set estimate shape undetermined";
      return;
  }
}

}  // namespace

ClassificationReport classify(const LiftedMap& f, const ClassifyParams& params) {
  ClassificationReport rep;
  rep.params = params;
  rep.isotopy = isotopy_class(f);
  const IntMatrix a = f.linear_part();
  if (a.det() != 1) fail(ErrorCode::Unsupported, "orientation-reversing map; classify its square instead");
  const ShapeThresholds& th = params.thresholds;

  switch (rep.isotopy.kind) {
    case IsotopyClass::Kind::Anosov:
      rep.route = Route::AnosovTrace;
      rep.verdict = Verdict::Hyperbolic;
      rep.reason = "linear part has |trace| = " + std::to_string(std::llabs(a.trace())) + " > 2";
      return rep;
    case IsotopyClass::Kind::TwistPower: {
      rep.route = Route::TwistInterval;
      LiftedMap g = f;
      if (rep.isotopy.negated) {
        g = power(f, 2);
        rep.power_applied = 2;
      }
      CyclicLift lift = cyclic_lift(g);
      rep.interval = twist_rotation_interval(lift, params.n, params.grid_res);
      double len = rep.interval->length();
      if (len > th.interval_length) {
        rep.verdict = Verdict::Hyperbolic;
        rep.reason = "twist rotation interval has positive length";
        return rep;
      }
      double mid = 0.5 * (rep.interval->lo + rep.interval->hi);
      Rational r = limit_denominator(mid, th.rational_point_denominator);
      double dist = std::abs(mid - r.get_d());
      if (len <= th.point_diameter && dist <= th.point_diameter) {
        rep.verdict = Verdict::EllipticConsistent;
        rep.rational_point = RationalPoint{floor_to_int(Rational(r.get_num())), 0,
                                           floor_to_int(Rational(r.get_den())), dist};
        rep.reason = "twist rotation interval is a rational singleton";
      } else {
        rep.verdict = Verdict::Undetermined;
        rep.reason = "twist rotation interval is short but not a rational singleton";
      }
      return rep;
    }
    case IsotopyClass::Kind::FiniteOrder: {
      rep.route = Route::IdentityIsotopicRotSet;
      rep.power_applied = rep.isotopy.order;
      classify_rotation_set(power(f, rep.isotopy.order), params, rep);
      return rep;
    }
    case IsotopyClass::Kind::IdentityIsotopic:
      rep.route = Route::IdentityIsotopicRotSet;
      classify_rotation_set(f, params, rep);
      return rep;
  }
  return rep;
}

std::optional<double> fit_exponent(const std::vector<CrossSample>& samples) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& s : samples) {
    if (s.n <= 0 || s.value <= 0) continue;
    double x = std::log(static_cast<double>(s.n)), y = std::log(static_cast<double>(s.value));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return std::nullopt;
  double den = m * sxx - sx * sx;
  if (den <= 0) return std::nullopt;
  return (m * sxy - sx * sy) / den;
}

namespace {

bool fits(std::int64_t v) { return std::llabs(v) < (std::int64_t{1} << 50); }

void farey_channel(const IntMatrix& a, IntVec2 w, const CrossCheckOptions& opts, CrossCheck& out) {
  out.channel = "farey";
  std::vector<std::int64_t> ns = opts.schedule;
  std::sort(ns.begin(), ns.end());
  IntVec2 cur = w;
  std::int64_t at = 0;
  for (std::int64_t n : ns) {
    bool ok = true;
    while (at < n) {
      cur = a * cur;
      ++at;
      if (!fits(cur.x) || !fits(cur.y)) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      out.notes.push_back("farey channel stopped before n = " + std::to_string(n) + ": class entries too large");
      break;
    }
    out.samples.push_back({n, farey_distance(w, cur)});
  }
  if (out.samples.size() >= 2 && out.samples.back().value <= out.samples.front().value)
    out.violations.push_back("Farey distance does not grow along the schedule");
}

}  // namespace

CrossCheck cross_check(const LiftedMap& f, const ClassificationReport& report, const PLCurve& a,
                       const CrossCheckOptions& opts) {
  CrossCheck out;
  IntVec2 w = homology_class(a);
  out.curve_class = {w.x, w.y};
  if (report.route == Route::AnosovTrace) {
    farey_channel(f.linear_part(), w, opts, out);
  } else {
    LiftedMap g = report.power_applied == 1 ? f : power(f, report.power_applied);
    PLCurve ref = a;
    if (report.route == Route::TwistInterval && !same_slope(w, report.isotopy.curve_class)) {
      ref = straight_curve(report.isotopy.curve_class);
      out.notes.push_back("reference curve replaced by the straight curve of the twist class");
      w = report.isotopy.curve_class;
      out.curve_class = {w.x, w.y};
    }
    out.channel = "crossing";
    if (report.verdict == Verdict::Hyperbolic) {
      TranslationLengthOptions tl;
      tl.schedule = opts.hyperbolic_schedule;
      tl.res = opts.res;
      tl.max_chord = opts.max_chord;
      out.translation_length = translation_length_bounds(g, ref, tl);
      for (const auto& row : out.translation_length->trace) out.samples.push_back({row.n, row.count});
      if (out.samples.size() >= 2 && out.samples.back().value <= out.samples.front().value)
        out.violations.push_back("crossing numbers do not grow for a hyperbolic verdict");
      if (out.translation_length->upper < out.translation_length->lower)
        out.violations.push_back("crossing upper estimate below the Farey lower bound");
      if (report.area_budget)
        out.notes.push_back(report.area_budget.value() + 0.05 >= out.translation_length->upper
                                ? "area budget covers the crossing upper estimate"
                                : "area budget below the crossing upper estimate");
    } else {
      std::vector<std::int64_t> ns = opts.schedule;
      std::sort(ns.begin(), ns.end());
      for (std::int64_t n : ns) {
        ImageOptions io;
        io.iterations = n;
        io.res = opts.res;
        io.max_chord = opts.max_chord;
        io.reference = &ref;
        try {
          PLCurve img = image_curve(g, ref, io);
          out.samples.push_back({n, crossing_number(ref, img)});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Resolution && e.code() != ErrorCode::NonGeneric) throw;
          out.notes.push_back("crossing channel stopped at n = " + std::to_string(n) + ": " + e.what());
          break;
        }
      }
    }
  }
  for (const auto& s : out.samples) out.max_value = std::max(out.max_value, s.value);
  out.fit_exponent = fit_exponent(out.samples);

  if (out.channel == "crossing" && report.verdict != Verdict::Hyperbolic) {
    if ((report.verdict == Verdict::EllipticConsistent || report.verdict == Verdict::EllipticCertified) &&
        out.max_value > opts.bounded_limit)
      out.violations.push_back("crossing numbers exceed " + std::to_string(opts.bounded_limit) +
                               " for an elliptic verdict");
    if (report.verdict == Verdict::ParabolicConsistent) {
      if (out.samples.size() < 2 || out.samples.back().value <= out.samples.front().value)
        out.violations.push_back("crossing numbers show no upward trend for a parabolic verdict");
      if (out.fit_exponent && *out.fit_exponent >= 1.0)
        out.violations.push_back("crossing growth is not sublinear for a parabolic verdict");
    }
  }
  return out;
}

}  // namespace rotgraph
