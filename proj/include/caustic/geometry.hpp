#pragma once

#include <cmath>
#include <numbers>

namespace caustic {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// Scalar cross product a.x*b.y - a.y*b.x (the 2x2 determinant det(a, b)).
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
/// Counter-clockwise quarter turn; the left normal of a tangent.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }
inline Vec2 unit_from_angle(double phi) { return {std::cos(phi), std::sin(phi)}; }
constexpr Vec2 lerp(Vec2 a, Vec2 b, double u) { return a + u * (b - a); }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  return a <= -kPi ? a + kTwoPi : a;
}

/// Wraps an angle into (-pi/2, pi/2], i.e. the nearest representative modulo pi.
inline double wrap_half_turn(double a) {
  a = std::remainder(a, kPi);
  return a <= -kPi / 2 ? a + kPi : a;
}

/// Positive remainder of x modulo period.
inline double positive_mod(double x, double period) {
  double r = std::fmod(x, period);
  return r < 0.0 ? r + period : r;
}

/// Signed offset from a to b on a circle of the given period, in (-period/2, period/2].
inline double cyclic_offset(double a, double b, double period) {
  double d = std::remainder(b - a, period);
  return d <= -period / 2 ? d + period : d;
}

}  // namespace caustic
