#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "twistfind/error.hpp"

namespace twistfind {

// Extended precision throughout. Thin triangles of area 1 at radius r have
// height 2/r, so at r ~ 1e4 a double-rounded vertex already moves the area
// by several parts in 1e9.
using Real = long double;

inline constexpr Real kPi = std::numbers::pi_v<Real>;
inline constexpr Real kTwoPi = 2 * kPi;

struct Point {
  Real x = 0;
  Real y = 0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
  friend constexpr Point operator*(Real s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, Real s) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator/(Point a, Real s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point, Point) = default;
};

constexpr Real dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr Real cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline Real norm(Point a) { return std::hypot(a.x, a.y); }
inline Real distance(Point a, Point b) { return norm(a - b); }

/// Rotates counter-clockwise by the angle whose sine and cosine are given.
constexpr Point rotate(Point p, Real sin_a, Real cos_a) {
  return {p.x * cos_a - p.y * sin_a, p.x * sin_a + p.y * cos_a};
}
inline Point rotate(Point p, Real angle) { return rotate(p, std::sin(angle), std::cos(angle)); }

/// Lexicographic (x, then y) ordering used for deterministic tie breaking.
constexpr bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct PolarPoint {
  Real r = 1;
  Real theta = 0;  // [0, 2pi)
};

/// Maps any angle into [0, 2pi); values that round up to 2pi map to 0.
Real normalize_angle(Real theta);

PolarPoint to_polar(Point p);
Point from_polar(PolarPoint q);

struct Tolerance {
  Real abs_tol = 1e-9L;
  Real rel_tol = 1e-9L;

  /// Throws InvalidConfig unless both are >= 0 and not both zero.
  void validate() const;

  /// |a - b| <= max(abs_tol, rel_tol * max(|a|, |b|)).
  bool equal(Real a, Real b) const;

  /// Bound on the sine of an angular deviation (parallelism, perpendicularity).
  Real angular() const { return abs_tol > rel_tol ? abs_tol : rel_tol; }
};

struct Triangle {
  Point a, b, c;

  Point operator[](std::size_t i) const { return i == 0 ? a : (i == 1 ? b : c); }
};

struct Quadrilateral {
  Point v0, v1, v2, v3;

  std::array<Point, 4> vertices() const { return {v0, v1, v2, v3}; }
};

Real triangle_area(const Triangle& t);

/// Unsigned shoelace area. Throws SelfIntersecting for crossed boundaries.
Real quad_area(const Quadrilateral& q);

/// True if two non-adjacent edges cross properly.
bool is_self_intersecting(const Quadrilateral& q);

/// Sides at vertex `apex` (0, 1 or 2) have equal length within tol.
bool is_isosceles(const Triangle& t, std::size_t apex, const Tolerance& tol = {});

/// The edge vectors at `corner` are perpendicular, tested on the cosine of
/// the angle between them. Throws Degenerate if the area is below abs_tol.
bool is_right_angled(const Triangle& t, std::size_t corner, const Tolerance& tol = {});

/// One pair of opposite sides parallel with distinct lengths, the other
/// pair equal in length. Parallelograms and quadrilaterals with three
/// collinear consecutive vertices are rejected. Throws SelfIntersecting.
bool is_isosceles_trapezoid(const Quadrilateral& q, const Tolerance& tol = {});

}  // namespace twistfind
