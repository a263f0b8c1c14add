#pragma once

// Closed-form reference values used by the tests. Nothing here calls into the
// library's geometry code.

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "caustic/curve.hpp"

namespace oracle {

constexpr double pi = 3.14159265358979323846;

inline std::string data(const std::string& name) { return std::string(CAUSTIC_TEST_DATA) + "/" + name; }

inline caustic::SampledCurve load(const std::string& name, int n = 2048) {
  auto spec = std::make_shared<const caustic::CurveSpec>(caustic::load_curve_spec(data(name)));
  return caustic::sample_curve(spec, n);
}

struct P {
  double x, y;
};

// Support function h = 1 + eps cos(3 theta).
struct O3 {
  double eps = 0.1;
  double h(double t) const { return 1 + eps * std::cos(3 * t); }
  double dh(double t) const { return -3 * eps * std::sin(3 * t); }
  double d2h(double t) const { return -9 * eps * std::cos(3 * t); }
  double d3h(double t) const { return 27 * eps * std::sin(3 * t); }
  // gamma = h n + h' e with n = (cos, sin), e = (-sin, cos).
  P point(double t) const {
    return {h(t) * std::cos(t) - dh(t) * std::sin(t), h(t) * std::sin(t) + dh(t) * std::cos(t)};
  }
  // gamma' = (h + h'') e
  P deriv(double t) const {
    const double r = h(t) + d2h(t);
    return {-r * std::sin(t), r * std::cos(t)};
  }
  double radius(double t) const { return h(t) + d2h(t); }
  double kappa(double t) const { return 1 / radius(t); }
};

inline P lerp(P a, P b, double lam) { return {lam * a.x + (1 - lam) * b.x, lam * a.y + (1 - lam) * b.y}; }
inline double dist(P a, P b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Angle between two lines through the origin, in [0, pi/2].
inline double line_angle(double ax, double ay, double bx, double by) {
  const double c = std::abs(ax * by - ay * bx);
  const double d = std::abs(ax * bx + ay * by);
  return std::atan2(c, d);
}

// Limacon r = 1 + 2 cos t.
struct Limacon {
  P point(double t) const {
    const double r = 1 + 2 * std::cos(t);
    return {r * std::cos(t), r * std::sin(t)};
  }
  P deriv(double t) const {
    return {-std::sin(t) - 2 * std::sin(2 * t), std::cos(t) + 2 * std::cos(2 * t)};
  }
  P deriv2(double t) const {
    return {-std::cos(t) - 4 * std::cos(2 * t), -std::sin(t) - 4 * std::sin(2 * t)};
  }
  double kappa(double t) const {
    const P d = deriv(t), dd = deriv2(t);
    return (d.x * dd.y - d.y * dd.x) / std::pow(std::hypot(d.x, d.y), 3);
  }
};

// x = cos t, y = sin t + c sin 2t.
struct Wavy {
  double c = 0.4;
  P point(double t) const { return {std::cos(t), std::sin(t) + c * std::sin(2 * t)}; }
  P deriv(double t) const { return {-std::sin(t), std::cos(t) + 2 * c * std::cos(2 * t)}; }
  P deriv2(double t) const { return {-std::cos(t), -std::sin(t) - 4 * c * std::sin(2 * t)}; }
  double kappa(double t) const {
    const P d = deriv(t), dd = deriv2(t);
    return (d.x * dd.y - d.y * dd.x) / std::pow(std::hypot(d.x, d.y), 3);
  }
};

}  // namespace oracle
