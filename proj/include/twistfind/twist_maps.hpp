#pragma once

#include <optional>

#include "twistfind/geometry.hpp"

namespace twistfind {

/// Target area and, for trapezoids, the scale factor R > 1 between the two
/// parallel sides.
struct TwistParams {
  Real area = 1;
  std::optional<Real> ratio;

  void validate() const;
};

enum class AngleKind { Phi, Psi };

/// Radius-dependent rotation angle of a twist map.
///
/// Phi(r) = asin(2 a / r^2) turns (O, p, f(p)) into an isosceles triangle of
/// area a. Psi(r) = asin(R^2/(R^2-1) * 2 a / r^2) makes the quadrilateral
/// (p, f(p), f(p)/R, p/R) have area a instead.
class AngleFunction {
 public:
  static AngleFunction phi(Real area);
  static AngleFunction psi(Real area, Real ratio);

  AngleKind kind() const { return kind_; }
  const TwistParams& params() const { return params_; }

  /// Smallest admissible radius (with a 1e-12 relative guard).
  Real r_min() const;

  /// sin of the angle at radius r; throws DomainError below r_min.
  Real sine(Real r) const;

  Real operator()(Real r) const;

 private:
  AngleFunction(AngleKind kind, TwistParams params);

  Real sine_numerator() const;

  AngleKind kind_;
  TwistParams params_;
};

Real phi(Real r, Real area = 1);
Real psi(Real r, const TwistParams& params);

/// Rotates p about the origin by angle_fn(|p|); preserves |p|.
Point twist_f(Point p, const AngleFunction& angle_fn);

/// Rotates back by angle_fn(|p|), which is well defined because the twist
/// keeps radii fixed.
Point twist_f_inverse(Point p, const AngleFunction& angle_fn);

/// (p + f(p)) / 2 for the phi-twist at the given area.
Point midpoint_g(Point p, Real area = 1);

/// Jacobian determinant of midpoint_g at radius r:
/// cos^2(phi/2) + area * sin(phi) / sqrt(r^4 - 4 area^2).
Real jacobian_g(Real r, Real area = 1);

/// |p - f(p)| = 2 r sin(phi(r)/2) for the phi-twist.
Real chord_length(Real r, Real area = 1);

/// (origin, p, f(p)): isosceles at the origin with the requested area.
Triangle isosceles_vertices(Point p, Real area = 1);

/// (origin, p, g(p)) with g taken at doubled area, so the right angle sits
/// at the third vertex and the triangle has the requested area.
Triangle right_vertices(Point p, Real area = 1);

/// (p, f(p), f(p)/R, p/R) under the psi-twist, in boundary order.
Quadrilateral trapezoid_vertices(Point p, const TwistParams& params);

}  // namespace twistfind
