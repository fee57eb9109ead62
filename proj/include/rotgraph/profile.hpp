#pragma once

#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rotgraph {

// amplitude * sin^2(pi (t - phase))
struct Sin2 {
  double amplitude = 1.0;
  double phase = 0.0;
};

// Tent of the given height supported on [center - half_width, center + half_width] mod 1.
struct TriangleBump {
  double center = 0.5;
  double half_width = 0.25;
  double height = 1.0;
};

// amplitude on |d| <= flat, falling as amplitude * (1 + cos(pi (|d| - flat) / (half_width - flat))) / 2
// to zero at |d| = half_width; d is the circular offset from center.
struct RaisedCosine {
  double center = 0.5;
  double half_width = 0.25;
  double amplitude = 1.0;
  double flat = 0.0;
};

// Periodic linear interpolation through knots (t_i, v_i) with 0 <= t_0 < ... < t_m < 1.
struct PiecewiseLinearTable {
  std::vector<std::pair<double, double>> knots;
};

struct Constant {
  double value = 0.0;
};

// Degree-one profiles: p(t + 1) = p(t) + 1.
struct Coordinate {};

// 0 below lo, 1 above hi, linear in between on [0, 1); extended with p(t + 1) = p(t) + 1.
struct AnnularRamp {
  double lo = 0.25;
  double hi = 0.75;
};

class Profile {
public:
  using Form = std::variant<Sin2, TriangleBump, RaisedCosine, PiecewiseLinearTable, Constant, Coordinate, AnnularRamp>;

  Profile() : form_(Sin2{}) {}
  Profile(Form form);  // validates parameters

  double operator()(double t) const;
  // 0 for periodic profiles, 1 for the degree-one forms.
  int degree() const;
  std::string_view kind() const;
  const Form& form() const { return form_; }

  friend bool operator==(const Profile& a, const Profile& b);

private:
  Form form_;
};

}  // namespace rotgraph
