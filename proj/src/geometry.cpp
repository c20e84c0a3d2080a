#include "twistfind/geometry.hpp"

#include <algorithm>

namespace twistfind {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::OriginNotRepresentable: return "OriginNotRepresentable";
    case Errc::SelfIntersecting: return "SelfIntersecting";
    case Errc::Degenerate: return "Degenerate";
    case Errc::DomainError: return "DomainError";
    case Errc::InvalidRatio: return "InvalidRatio";
    case Errc::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Real normalize_angle(Real theta) {
  Real t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0;
  return t;
}

PolarPoint to_polar(Point p) {
  if (p.x == 0 && p.y == 0) {
    throw Error(Errc::OriginNotRepresentable, "the origin has no polar angle");
  }
  return {norm(p), normalize_angle(std::atan2(p.y, p.x))};
}

Point from_polar(PolarPoint q) { return {q.r * std::cos(q.theta), q.r * std::sin(q.theta)}; }

void Tolerance::validate() const {
  if (!(abs_tol >= 0) || !(rel_tol >= 0)) {
    throw Error(Errc::InvalidConfig, "tolerance components must be non-negative");
  }
  if (abs_tol == 0 && rel_tol == 0) {
    throw Error(Errc::InvalidConfig, "abs_tol and rel_tol cannot both be zero");
  }
}

bool Tolerance::equal(Real a, Real b) const {
  const Real scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= std::max(abs_tol, rel_tol * scale);
}

Real triangle_area(const Triangle& t) { return std::fabs(cross(t.b - t.a, t.c - t.a)) / 2; }

namespace {

int orientation(Point a, Point b, Point c) {
  const Real o = cross(b - a, c - a);
  return (o > 0) - (o < 0);
}

bool segments_cross(Point a, Point b, Point c, Point d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

// Sine of the angle between u and v; 0 when either is the zero vector.
Real sine_between(Point u, Point v) {
  const Real lu = norm(u);
  const Real lv = norm(v);
  if (lu == 0 || lv == 0) return 0;
  return std::fabs(cross(u, v)) / (lu * lv);
}

}  // namespace

bool is_self_intersecting(const Quadrilateral& q) {
  return segments_cross(q.v0, q.v1, q.v2, q.v3) || segments_cross(q.v1, q.v2, q.v3, q.v0);
}

Real quad_area(const Quadrilateral& q) {
  if (is_self_intersecting(q)) {
    throw Error(Errc::SelfIntersecting, "quadrilateral boundary crosses itself");
  }
  // Shoelace relative to v0: fewer large cancelling products.
  const Point a = q.v1 - q.v0;
  const Point b = q.v2 - q.v0;
  const Point c = q.v3 - q.v0;
  return std::fabs(cross(a, b) + cross(b, c)) / 2;
}

bool is_isosceles(const Triangle& t, std::size_t apex, const Tolerance& tol) {
  const Point top = t[apex % 3];
  return tol.equal(distance(top, t[(apex + 1) % 3]), distance(top, t[(apex + 2) % 3]));
}

bool is_right_angled(const Triangle& t, std::size_t corner, const Tolerance& tol) {
  if (triangle_area(t) <= tol.abs_tol) {
    throw Error(Errc::Degenerate, "triangle area below tolerance");
  }
  const Point c = t[corner % 3];
  const Point u = t[(corner + 1) % 3] - c;
  const Point v = t[(corner + 2) % 3] - c;
  return std::fabs(dot(u, v)) <= tol.angular() * norm(u) * norm(v);
}

bool is_isosceles_trapezoid(const Quadrilateral& q, const Tolerance& tol) {
  if (is_self_intersecting(q)) {
    throw Error(Errc::SelfIntersecting, "quadrilateral boundary crosses itself");
  }
  const auto v = q.vertices();
  std::array<Point, 4> edge{};
  std::array<Real, 4> len{};
  for (std::size_t i = 0; i < 4; ++i) {
    edge[i] = v[(i + 1) % 4] - v[i];
    len[i] = norm(edge[i]);
    if (len[i] == 0) return false;
  }
  const Real ang = tol.angular();
  for (std::size_t i = 0; i < 4; ++i) {
    // Three consecutive vertices on a line.
    if (sine_between(edge[i], edge[(i + 1) % 4]) <= ang) return false;
  }
  const auto parallel = [&](std::size_t i, std::size_t j) {
    return sine_between(edge[i], edge[j]) <= ang;
  };
  for (std::size_t k = 0; k < 2; ++k) {
    const std::size_t base_a = k, base_b = k + 2, leg_a = k + 1, leg_b = (k + 3) % 4;
    if (!parallel(base_a, base_b) || parallel(leg_a, leg_b)) continue;
    if (tol.equal(len[base_a], len[base_b])) continue;
    if (tol.equal(len[leg_a], len[leg_b])) return true;
  }
  return false;
}

}  // namespace twistfind
