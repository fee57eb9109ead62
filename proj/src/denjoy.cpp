#include "rotgraph/denjoy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotgraph/errors.hpp"

namespace rotgraph {

namespace {

double frac(long double v) { return static_cast<double>(v - std::floor(v)); }

}  // namespace

double DenjoyMap::weight_constant() { return std::tanh(std::numbers::pi) / (2.0 * std::numbers::pi); }

DenjoyMap::DenjoyMap(DenjoyParams params) : params_(params) {
  if (!std::isfinite(params_.alpha) || params_.alpha <= 0.0 || params_.alpha >= 1.0)
    fail(ErrorCode::Domain, "denjoy: alpha must lie in (0, 1)");
  if (params_.k_max < 1 || params_.k_max > 1000000) fail(ErrorCode::Domain, "denjoy: k_max must lie in [1, 1e6]");
  const std::int64_t kk = params_.k_max;
  const long double a = params_.alpha;

  gaps_.reserve(static_cast<std::size_t>(2 * kk + 1));
  long double total = 0;
  for (std::int64_t k = -kk; k <= kk; ++k) {
    gaps_.push_back({k, frac(a * static_cast<long double>(k)), 0.0, weight(k)});
    total += gaps_.back().width;
  }
  std::sort(gaps_.begin(), gaps_.end(), [](const Gap& x, const Gap& y) { return x.theta < y.theta; });
  for (std::size_t i = 1; i < gaps_.size(); ++i)
    if (!(gaps_[i - 1].theta < gaps_[i].theta)) fail(ErrorCode::Domain, "denjoy: orbit points are not distinct");
  sigma_ = static_cast<double>(1.0L - total);

  prefix_.assign(gaps_.size() + 1, 0.0);
  by_k_.assign(gaps_.size(), 0);
  long double run = 0;
  for (std::size_t i = 0; i < gaps_.size(); ++i) {
    prefix_[i] = static_cast<double>(run);
    gaps_[i].left = static_cast<double>(static_cast<long double>(sigma_) * gaps_[i].theta + run);
    run += gaps_[i].width;
    by_k_[static_cast<std::size_t>(gaps_[i].k + kk)] = i;
  }
  prefix_.back() = static_cast<double>(run);

  breaks_.reserve(2 * gaps_.size() + 1);
  for (const Gap& g : gaps_) {
    double left_img, right_img;
    if (g.k == kk) {
      double th = frac(a * static_cast<long double>(kk + 1));
      left_img = right_img = blow_up(th) + (th < g.theta ? 1.0 : 0.0);
    } else {
      const Gap& next = gap(g.k + 1);
      double wrap = next.theta < g.theta ? 1.0 : 0.0;
      left_img = next.left + wrap;
      right_img = next.left + next.width + wrap;
    }
    breaks_.push_back({g.left, left_img, left_img});
    breaks_.push_back({g.left + g.width, right_img, right_img});
  }
  {
    // The point whose image would be the orbit point -k_max: D jumps across that gap.
    double th = frac(-a * static_cast<long double>(kk + 1));
    const Gap& first = gap(-kk);
    double wrap = first.theta < th ? 1.0 : 0.0;
    breaks_.push_back({blow_up(th), first.left + wrap, first.left + first.width + wrap});
  }
  std::sort(breaks_.begin(), breaks_.end(), [](const Break& x, const Break& y) { return x.x < y.x; });
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i - 1].x < breaks_[i].x)) fail(ErrorCode::Internal, "denjoy: breakpoints collide");
}

double DenjoyMap::weight(std::int64_t k) const {
  if (k < -params_.k_max || k > params_.k_max) return 0.0;
  double kd = static_cast<double>(k);
  return weight_constant() / (kd * kd + 1.0);
}

double DenjoyMap::tail_error() const { return 0.5 - (1.0 - sigma_); }

const DenjoyMap::Gap& DenjoyMap::gap(std::int64_t k) const {
  if (k < -params_.k_max || k > params_.k_max) fail(ErrorCode::Domain, "denjoy: gap index out of range");
  return gaps_[by_k_[static_cast<std::size_t>(k + params_.k_max)]];
}

std::optional<std::size_t> DenjoyMap::gap_at(double x) const {
  double u = x - std::floor(x);
  auto it = std::upper_bound(gaps_.begin(), gaps_.end(), u, [](double v, const Gap& g) { return v < g.left; });
  if (it == gaps_.begin()) return std::nullopt;
  --it;
  if (u <= it->left + it->width) return static_cast<std::size_t>(it - gaps_.begin());
  return std::nullopt;
}

double DenjoyMap::collapse(double x) const {
  double m = std::floor(x), u = x - m;
  auto it = std::upper_bound(gaps_.begin(), gaps_.end(), u, [](double v, const Gap& g) { return v < g.left; });
  std::size_t i = static_cast<std::size_t>(it - gaps_.begin()) - 1;  // gaps_[0].left == 0
  const Gap& g = gaps_[i];
  if (u <= g.left + g.width) return g.theta + m;
  double hi = i + 1 < gaps_.size() ? gaps_[i + 1].theta : 1.0;
  double th = (u - prefix_[i + 1]) / sigma_;
  return std::clamp(th, g.theta, hi) + m;
}

double DenjoyMap::blow_up(double theta) const {
  double m = std::floor(theta), u = theta - m;
  auto it = std::lower_bound(gaps_.begin(), gaps_.end(), u, [](const Gap& g, double v) { return g.theta < v; });
  std::size_t idx = static_cast<std::size_t>(it - gaps_.begin());
  return sigma_ * u + prefix_[idx] + m;
}

double DenjoyMap::break_x(std::size_t i) const {
  return i < breaks_.size() ? breaks_[i].x : breaks_[0].x + 1.0;
}

double DenjoyMap::start_value(double s, std::size_t i) const {
  return (1.0 - s) * breaks_[i].x + s * breaks_[i].value_right;
}

double DenjoyMap::end_value(double s, std::size_t i) const {
  if (i + 1 < breaks_.size()) return (1.0 - s) * breaks_[i + 1].x + s * breaks_[i + 1].value_left;
  return (1.0 - s) * (breaks_[0].x + 1.0) + s * (breaks_[0].value_left + 1.0);
}

double DenjoyMap::eval(double x) const { return eval_interp(1.0, x); }

double DenjoyMap::eval_interp(double s, double x) const {
  double m = std::floor(x), u = x - m;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), u, [](double v, const Break& b) { return v < b.x; });
  std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  double x0 = breaks_[i].x, x1 = break_x(i + 1);
  double y0 = start_value(s, i), y1 = end_value(s, i);
  return y0 + (u - x0) / (x1 - x0) * (y1 - y0) + m;
}

double DenjoyMap::invert_interp(double s, double y) const {
  double g0 = start_value(s, 0);
  double q = std::floor(y - g0);
  double z = y - q;
  if (z < g0) z = g0;
  std::size_t lo = 0, hi = breaks_.size();  // largest i with start_value(i) <= z
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (start_value(s, mid) <= z)
      lo = mid;
    else
      hi = mid;
  }
  double x0 = breaks_[lo].x, x1 = break_x(lo + 1);
  double y0 = start_value(s, lo), y1 = end_value(s, lo);
  if (z >= y1) return x1 + q;
  return x0 + (z - y0) / (y1 - y0) * (x1 - x0) + q;
}

SuspensionPoint to_suspension(const DenjoyMap& d, Vec2 p) {
  double level = std::floor(p.y);
  double h = p.y - level;
  return {d.invert_interp(h, p.x), static_cast<std::int64_t>(level), h};
}

Vec2 from_suspension(const DenjoyMap& d, const SuspensionPoint& q) {
  return {d.eval_interp(q.height, q.x), static_cast<double>(q.level) + q.height};
}

std::optional<StripCoordinate> strip_coordinate(const DenjoyMap& d, const SuspensionPoint& q) {
  auto i = d.gap_at(q.x);
  if (!i) return std::nullopt;
  const auto& g = d.gaps()[*i];
  double u = (q.x - std::floor(q.x) - g.left) / g.width;
  return StripCoordinate{g.k, std::clamp(u, 0.0, 1.0), static_cast<double>(g.k) + q.height};
}

// ---------------------------------------------------------------------------

DenjoyParabolic::DenjoyParabolic(std::shared_ptr<const DenjoyMap> map, double epsilon)
    : map_(std::move(map)), epsilon_(epsilon) {
  if (!map_) fail(ErrorCode::Internal, "denjoy_parabolic: missing circle map");
  if (!std::isfinite(epsilon_) || epsilon_ <= 0.0 || epsilon_ >= 1.0)
    fail(ErrorCode::Domain, "denjoy_parabolic: bump height must lie in (0, 1)");
}

nlohmann::json DenjoyParabolic::params() const {
  return {{"alpha", map_->alpha()}, {"k_max", map_->k_max()}, {"epsilon", epsilon_}};
}

SuspensionPoint DenjoyParabolic::apply_suspension(const SuspensionPoint& q) const {
  auto sc = strip_coordinate(*map_, q);
  if (!sc) return q;
  double sn = std::sin(std::numbers::pi * sc->u);
  double push = epsilon_ * sn * sn * std::exp(-std::abs(sc->t));
  SuspensionPoint out = q;
  out.height += push;
  if (out.height >= 1.0) {
    out.height -= 1.0;
    out.x = map_->eval(out.x);
    ++out.level;
  }
  return out;
}

Vec2 DenjoyParabolic::apply(Vec2 p) const {
  return from_suspension(*map_, apply_suspension(to_suspension(*map_, p)));
}

DenjoyFlow::DenjoyFlow(std::shared_ptr<const DenjoyMap> map, double time) : map_(std::move(map)), time_(time) {
  if (!map_) fail(ErrorCode::Internal, "denjoy_irrational_flow: missing circle map");
  if (!std::isfinite(time_) || time_ < 0.0) fail(ErrorCode::Domain, "denjoy_irrational_flow: time must be >= 0");
  cap_ = map_->weight(0) / 4.0;
}

nlohmann::json DenjoyFlow::params() const {
  return {{"alpha", map_->alpha()}, {"k_max", map_->k_max()}, {"time", time_}};
}

double DenjoyFlow::slowdown(std::int64_t k, double u, double height) const {
  double wk = map_->weight(k), wn = map_->weight(k + 1);
  double across = wk + (wn - wk) * height;
  return std::min(1.0, std::min(u, 1.0 - u) * across / cap_);
}

SuspensionPoint DenjoyFlow::flow_suspension(const SuspensionPoint& q, double tau) const {
  SuspensionPoint p = q;
  const std::int64_t kk = map_->k_max();
  while (tau > 0.0) {
    auto sc = strip_coordinate(*map_, p);
    if (!sc || sc->k >= kk) {
      double total = p.height + tau;
      double lifts = std::floor(total);
      p.height = total - lifts;
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(lifts); ++i) {
        p.x = map_->eval(p.x);
        ++p.level;
      }
      return p;
    }
    if (slowdown(sc->k, sc->u, p.height) >= 1.0) return p;
    // speed(h) = a - b h on this unit interval
    double d = std::min(sc->u, 1.0 - sc->u);
    double wk = map_->weight(sc->k), wn = map_->weight(sc->k + 1);
    double a = 1.0 - d * wk / cap_;
    double b = d * (wn - wk) / cap_;
    double h0 = p.height;
    double v0 = a - b * h0;
    double reach = INFINITY;
    if (a - b > 0.0) reach = b == 0.0 ? (1.0 - h0) / a : -std::log1p(-b * (1.0 - h0) / v0) / b;
    if (tau < reach) {
      p.height = b == 0.0 ? h0 + a * tau : h0 + v0 * (-std::expm1(-b * tau)) / b;
      p.height = std::min(p.height, std::nextafter(1.0, 0.0));
      return p;
    }
    tau -= reach;
    p.height = 0.0;
    p.x = map_->eval(p.x);
    ++p.level;
  }
  return p;
}

Vec2 DenjoyFlow::apply(Vec2 p) const {
  return from_suspension(*map_, flow_suspension(to_suspension(*map_, p), time_));
}

}  // namespace rotgraph
