#include "rotgraph/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "overloaded.hpp"
#include "rotgraph/errors.hpp"

namespace rotgraph {

using detail::overloaded;

namespace {

double frac(double t) { return t - std::floor(t); }

// Signed offset in [-1/2, 1/2) from c to t on the circle.
double circular_offset(double t, double c) { return frac(t - c + 0.5) - 0.5; }

void validate(const Profile::Form& form) {
  std::visit(overloaded{
                 [](const Sin2& p) {
                   if (!std::isfinite(p.amplitude) || !std::isfinite(p.phase)) fail(ErrorCode::Input, "sin2: non-finite parameter");
                 },
                 [](const TriangleBump& p) {
                   if (!(p.half_width > 0.0 && p.half_width <= 0.5) || !std::isfinite(p.center) || !std::isfinite(p.height))
                     fail(ErrorCode::Input, "triangle: half_width must lie in (0, 1/2]");
                 },
                 [](const RaisedCosine& p) {
                   if (!(p.half_width > 0.0 && p.half_width <= 0.5) || !std::isfinite(p.center) || !std::isfinite(p.amplitude))
                     fail(ErrorCode::Input, "raised_cosine: half_width must lie in (0, 1/2]");
                   if (!(p.flat >= 0.0 && p.flat < p.half_width))
                     fail(ErrorCode::Input, "raised_cosine: flat must lie in [0, half_width)");
                 },
                 [](const PiecewiseLinearTable& p) {
                   if (p.knots.empty()) fail(ErrorCode::Input, "pl_table: no knots");
                   for (std::size_t i = 0; i < p.knots.size(); ++i) {
                     auto [t, v] = p.knots[i];
                     if (!(t >= 0.0 && t < 1.0) || !std::isfinite(v)) fail(ErrorCode::Input, "pl_table: knot outside [0,1)");
                     if (i > 0 && !(t > p.knots[i - 1].first)) fail(ErrorCode::Input, "pl_table: knots not increasing");
                   }
                 },
                 [](const Constant& p) {
                   if (!std::isfinite(p.value)) fail(ErrorCode::Input, "constant: non-finite value");
                 },
                 [](const Coordinate&) {},
                 [](const AnnularRamp& p) {
                   if (!(0.0 <= p.lo && p.lo < p.hi && p.hi <= 1.0)) fail(ErrorCode::Input, "annular_ramp: need 0 <= lo < hi <= 1");
                 },
             },
             form);
}

double table_eval(const PiecewiseLinearTable& p, double t) {
  const auto& k = p.knots;
  if (k.size() == 1) return k[0].second;
  double s = frac(t);
  auto it = std::upper_bound(k.begin(), k.end(), s, [](double v, const auto& knot) { return v < knot.first; });
  // Interpolate between the neighbouring knots, wrapping across 1.
  std::pair<double, double> lo, hi;
  if (it == k.begin()) {
    lo = {k.back().first - 1.0, k.back().second};
    hi = k.front();
  } else if (it == k.end()) {
    lo = k.back();
    hi = {k.front().first + 1.0, k.front().second};
  } else {
    lo = *(it - 1);
    hi = *it;
  }
  double w = (s - lo.first) / (hi.first - lo.first);
  return lo.second + w * (hi.second - lo.second);
}

}  // namespace

Profile::Profile(Form form) : form_(std::move(form)) { validate(form_); }

double Profile::operator()(double t) const {
  return std::visit(overloaded{
                        [t](const Sin2& p) {
                          double s = std::sin(std::numbers::pi * (t - p.phase));
                          return p.amplitude * s * s;
                        },
                        [t](const TriangleBump& p) {
                          double d = std::abs(circular_offset(t, p.center));
                          return d >= p.half_width ? 0.0 : p.height * (1.0 - d / p.half_width);
                        },
                        [t](const RaisedCosine& p) {
                          double d = std::abs(circular_offset(t, p.center));
                          if (d >= p.half_width) return 0.0;
                          if (d <= p.flat) return p.amplitude;
                          return p.amplitude * 0.5 *
                                 (1.0 + std::cos(std::numbers::pi * (d - p.flat) / (p.half_width - p.flat)));
                        },
                        [t](const PiecewiseLinearTable& p) { return table_eval(p, t); },
                        [](const Constant& p) { return p.value; },
                        [t](const Coordinate&) { return t; },
                        [t](const AnnularRamp& p) {
                          double f = std::floor(t);
                          double s = t - f;
                          double r = s <= p.lo ? 0.0 : (s >= p.hi ? 1.0 : (s - p.lo) / (p.hi - p.lo));
                          return f + r;
                        },
                    },
                    form_);
}

int Profile::degree() const {
  return std::holds_alternative<Coordinate>(form_) || std::holds_alternative<AnnularRamp>(form_) ? 1 : 0;
}

std::string_view Profile::kind() const {
  return std::visit(overloaded{
                        [](const Sin2&) { return std::string_view("sin2"); },
                        [](const TriangleBump&) { return std::string_view("triangle"); },
                        [](const RaisedCosine&) { return std::string_view("raised_cosine"); },
                        [](const PiecewiseLinearTable&) { return std::string_view("pl_table"); },
                        [](const Constant&) { return std::string_view("constant"); },
                        [](const Coordinate&) { return std::string_view("coordinate"); },
                        [](const AnnularRamp&) { return std::string_view("annular_ramp"); },
                    },
                    form_);
}

bool operator==(const Profile& a, const Profile& b) {
  if (a.form_.index() != b.form_.index()) return false;
  return std::visit(overloaded{
                        [&](const Sin2& p) {
                          auto& q = std::get<Sin2>(b.form_);
                          return p.amplitude == q.amplitude && p.phase == q.phase;
                        },
                        [&](const TriangleBump& p) {
                          auto& q = std::get<TriangleBump>(b.form_);
                          return p.center == q.center && p.half_width == q.half_width && p.height == q.height;
                        },
                        [&](const RaisedCosine& p) {
                          auto& q = std::get<RaisedCosine>(b.form_);
                          return p.center == q.center && p.half_width == q.half_width && p.amplitude == q.amplitude &&
                                 p.flat == q.flat;
                        },
                        [&](const PiecewiseLinearTable& p) { return p.knots == std::get<PiecewiseLinearTable>(b.form_).knots; },
                        [&](const Constant& p) { return p.value == std::get<Constant>(b.form_).value; },
                        [](const Coordinate&) { return true; },
                        [&](const AnnularRamp& p) {
                          auto& q = std::get<AnnularRamp>(b.form_);
                          return p.lo == q.lo && p.hi == q.hi;
                        },
                    },
                    a.form_);
}

}  // namespace rotgraph
