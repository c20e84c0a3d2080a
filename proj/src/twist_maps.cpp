#include "twistfind/twist_maps.hpp"

#include <string>

namespace twistfind {

namespace {

constexpr Real kDomainGuard = 1e-12L;

// cos of the angle whose sine is s, for s in [0, 1).
Real cosine_from_sine(Real s) { return std::sqrt((1 - s) * (1 + s)); }

}  // namespace

void TwistParams::validate() const {
  if (!(area > 0) || !std::isfinite(area)) {
    throw Error(Errc::InvalidConfig, "area must be a positive finite number");
  }
  if (ratio && !(*ratio > 1)) {
    throw Error(Errc::InvalidRatio, "scale ratio R must exceed 1, got " + std::to_string(static_cast<double>(*ratio)));
  }
}

AngleFunction::AngleFunction(AngleKind kind, TwistParams params) : kind_(kind), params_(params) {
  params_.validate();
}

AngleFunction AngleFunction::phi(Real area) { return AngleFunction(AngleKind::Phi, {area, std::nullopt}); }

AngleFunction AngleFunction::psi(Real area, Real ratio) {
  return AngleFunction(AngleKind::Psi, {area, ratio});
}

Real AngleFunction::sine_numerator() const {
  const Real base = 2 * params_.area;
  if (kind_ == AngleKind::Phi) return base;
  const Real r2 = *params_.ratio * *params_.ratio;
  return base * r2 / (r2 - 1);
}

Real AngleFunction::r_min() const { return std::sqrt(sine_numerator()) * (1 + kDomainGuard); }

Real AngleFunction::sine(Real r) const {
  if (!(r > r_min())) {
    throw Error(Errc::DomainError, "radius " + std::to_string(static_cast<double>(r)) +
                                       " is not above the admissible minimum " +
                                       std::to_string(static_cast<double>(r_min())));
  }
  return sine_numerator() / (r * r);
}

Real AngleFunction::operator()(Real r) const { return std::asin(sine(r)); }

Real phi(Real r, Real area) { return AngleFunction::phi(area)(r); }

Real psi(Real r, const TwistParams& params) {
  if (!params.ratio) throw Error(Errc::InvalidRatio, "psi needs a scale ratio R");
  return AngleFunction::psi(params.area, *params.ratio)(r);
}

Point twist_f(Point p, const AngleFunction& angle_fn) {
  const Real s = angle_fn.sine(norm(p));
  return rotate(p, s, cosine_from_sine(s));
}

Point twist_f_inverse(Point p, const AngleFunction& angle_fn) {
  const Real s = angle_fn.sine(norm(p));
  return rotate(p, -s, cosine_from_sine(s));
}

Point midpoint_g(Point p, Real area) { return (p + twist_f(p, AngleFunction::phi(area))) / 2; }

Real jacobian_g(Real r, Real area) {
  const Real s = AngleFunction::phi(area).sine(r);
  const Real c = cosine_from_sine(s);
  const Real r2 = r * r;
  // r^4 - 4 area^2, factored to keep precision near the boundary.
  const Real disc = (r2 - 2 * area) * (r2 + 2 * area);
  return (1 + c) / 2 + area * s / std::sqrt(disc);
}

Real chord_length(Real r, Real area) { return 2 * r * std::sin(phi(r, area) / 2); }

Triangle isosceles_vertices(Point p, Real area) {
  return {Point{}, p, twist_f(p, AngleFunction::phi(area))};
}

Triangle right_vertices(Point p, Real area) { return {Point{}, p, midpoint_g(p, 2 * area)}; }

Quadrilateral trapezoid_vertices(Point p, const TwistParams& params) {
  params.validate();
  if (!params.ratio) throw Error(Errc::InvalidRatio, "trapezoid construction needs a scale ratio R");
  const Real ratio = *params.ratio;
  const Point image = twist_f(p, AngleFunction::psi(params.area, ratio));
  return {p, image, image / ratio, p / ratio};
}

}  // namespace twistfind
