#include "twistfind/search.hpp"

#include <algorithm>
#include <sstream>

#include "twistfind/twist_maps.hpp"

namespace twistfind {

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::IsoscelesTriangle: return "isosceles_triangle";
    case ShapeKind::RightTriangle: return "right_triangle";
    case ShapeKind::IsoscelesTrapezoid: return "isosceles_trapezoid";
  }
  return "unknown";
}

std::optional<ShapeKind> shape_kind_from_string(std::string_view name) {
  if (name == "isosceles_triangle" || name == "isosceles") return ShapeKind::IsoscelesTriangle;
  if (name == "right_triangle" || name == "right") return ShapeKind::RightTriangle;
  if (name == "isosceles_trapezoid" || name == "trapezoid") return ShapeKind::IsoscelesTrapezoid;
  return std::nullopt;
}

namespace {

struct Construction {
  std::vector<Point> vertices;  // original coordinates
  Point image;                  // the vertex that must land in B
};

std::vector<Real> sides_of(const std::vector<Point>& v) {
  std::vector<Real> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(distance(v[i], v[(i + 1) % v.size()]));
  return out;
}

Real area_of(const std::vector<Point>& v) {
  if (v.size() == 3) return triangle_area({v[0], v[1], v[2]});
  return quad_area({v[0], v[1], v[2], v[3]});
}

// Largest chord |p - image| over B' is below (pi area kappa / C) * epsilon;
// the construction needs it under epsilon / 2 so that the image stays in B.
void check_chord_margin(Real area, Real C, Real kappa) {
  if (!(kPi * area * kappa / C < 0.5L)) {
    std::ostringstream msg;
    msg << "locator.C = " << static_cast<double>(C) << " is too small for area "
        << static_cast<double>(area) << "; need C > " << static_cast<double>(2 * kPi * area * kappa);
    throw Error(Errc::InvalidConfig, msg.str());
  }
}

SearchOutcome run_search(ShapeKind kind, const PlanarSet& s, Real area, const LocatorConfig& cfg,
                         const SearchOptions& options) {
  cfg.validate();
  options.tolerance.validate();
  TwistParams{area, std::nullopt}.validate();
  const bool trapezoid = kind == ShapeKind::IsoscelesTrapezoid;
  if (!trapezoid) check_chord_margin(area, cfg.C, 1);

  try {
    const DensityPoint dp = find_density_point(s, cfg);
    const Point O = find_far_point(s, dp.A, dp.epsilon, cfg, trapezoid ? SearchMode::Trapezoid : SearchMode::Triangle);
    SearchContext ctx = make_context(dp.A, dp.epsilon, O, cfg.C);
    if (trapezoid) {
      ctx.R = choose_R(s, ctx, cfg);
      const Real r2 = *ctx.R * *ctx.R;
      check_chord_margin(area, cfg.C, r2 / (r2 - 1));
    }

    const auto member = [&](Point p) { return trapezoid ? s_r_contains(s, p, *ctx.R, O) : s.contains(p); };

    // Scan B' in order of distance to A, ties lexicographic.
    struct Sample {
      Point p;
      Real dist2;
    };
    std::vector<Sample> scan;
    for_each_disk_sample(s, ctx.A, ctx.B_prime.radius, cfg.scan_samples, [&](Point p, Real) {
      const Point v = p - ctx.A;
      scan.push_back({p, dot(v, v)});
    });
    std::sort(scan.begin(), scan.end(), [](const Sample& a, const Sample& b) {
      if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
      return lex_less(a.p, b.p);
    });

    const auto construct = [&](Point p) -> Construction {
      const Point q = ctx.frame.apply(p);
      switch (kind) {
        case ShapeKind::IsoscelesTriangle: {
          const Point image = ctx.frame.inverse(isosceles_vertices(q, area).c);
          return {{O, p, image}, image};
        }
        case ShapeKind::RightTriangle: {
          const Point image = ctx.frame.inverse(right_vertices(q, area).c);
          return {{O, p, image}, image};
        }
        case ShapeKind::IsoscelesTrapezoid: {
          const Quadrilateral quad = trapezoid_vertices(q, {area, ctx.R});
          const Point image = ctx.frame.inverse(quad.v1);
          // Scaled copies are taken about O in original coordinates, exactly
          // as membership in S_R is tested.
          const Real R = *ctx.R;
          return {{p, image, O + (image - O) / R, O + (p - O) / R}, image};
        }
      }
      return {};
    };

    Diagnostics diag;
    diag.best_density = dp.density;
    std::size_t rejected = 0;
    for (const Sample& sample : scan) {
      if (!member(sample.p)) continue;
      ++diag.cells_scanned;
      const Construction c = construct(sample.p);
      ++diag.containment_checks;
      if (!(distance(c.image, ctx.A) < ctx.epsilon)) {
        throw std::logic_error("twist image left B: the chord bound failed");
      }
      if (!member(c.image)) continue;

      ShapeCertificate cert;
      cert.kind = kind;
      cert.vertices = c.vertices;
      cert.target_area = area;
      cert.tolerance = options.tolerance;
      cert.context = {ctx.A, ctx.epsilon, ctx.O, ctx.d, ctx.C, ctx.R, ctx.frame};
      cert.config_hash = options.provenance;
      try {
        cert.measured_area = area_of(cert.vertices);
      } catch (const Error&) {
        ++rejected;
        continue;
      }
      cert.side_lengths = sides_of(cert.vertices);
      if (verify_certificate(cert, s).ok) return SearchOutcome(std::move(cert), diag);
      ++rejected;
    }

    const Real mu_b = kPi * ctx.epsilon * ctx.epsilon;
    const Real covered = trapezoid
                             ? s_r_density(s, ctx.A, ctx.epsilon, *ctx.R, O, cfg.density_samples) * mu_b
                             : measure_in_disk(s, ctx.A, ctx.epsilon, cfg.density_samples);
    diag.missing_measure = std::max<Real>(0, mu_b - covered);
    diag.contradiction_bound = mu_b / (kind == ShapeKind::RightTriangle ? 9 : 8);
    std::ostringstream msg;
    msg << "no scanned p in B' had its image in the set (" << diag.cells_scanned << " members scanned, "
        << rejected << " candidates failed verification); estimated mu(B \\ S) = "
        << static_cast<double>(*diag.missing_measure) << " vs bound "
        << static_cast<double>(*diag.contradiction_bound);
    diag.message = msg.str();
    return SearchFailure{FailureKind::ImageNeverLands, diag};
  } catch (const HypothesisNotMet& e) {
    return SearchFailure{e.kind(), e.diagnostics()};
  } catch (const Error& e) {
    if (e.code() != Errc::DomainError) throw;
    Diagnostics diag;
    diag.message = e.what();
    return SearchFailure{FailureKind::DomainError, diag};
  }
}

}  // namespace

SearchOutcome find_isosceles_triangle(const PlanarSet& s, Real area, const LocatorConfig& cfg,
                                      const SearchOptions& options) {
  return run_search(ShapeKind::IsoscelesTriangle, s, area, cfg, options);
}

SearchOutcome find_right_triangle(const PlanarSet& s, Real area, const LocatorConfig& cfg,
                                  const SearchOptions& options) {
  return run_search(ShapeKind::RightTriangle, s, area, cfg, options);
}

SearchOutcome find_isosceles_trapezoid(const PlanarSet& s, Real area, const LocatorConfig& cfg,
                                       const SearchOptions& options) {
  return run_search(ShapeKind::IsoscelesTrapezoid, s, area, cfg, options);
}

SearchOutcome find_shape(ShapeKind kind, const PlanarSet& s, Real area, const LocatorConfig& cfg,
                         const SearchOptions& options) {
  return run_search(kind, s, area, cfg, options);
}

VerificationReport verify_certificate(const ShapeCertificate& cert, const PlanarSet& s) {
  VerificationReport report;
  const auto fail = [&](std::string reason) {
    report.ok = false;
    report.reasons.push_back(std::move(reason));
  };
  const std::size_t expected = cert.kind == ShapeKind::IsoscelesTrapezoid ? 4 : 3;
  if (cert.vertices.size() != expected) {
    fail("vertex count: expected " + std::to_string(expected));
    return report;
  }
  for (std::size_t i = 0; i < cert.vertices.size(); ++i) {
    if (!s.contains(cert.vertices[i])) fail("membership: vertex " + std::to_string(i) + " is not in the set");
  }
  const Tolerance& tol = cert.tolerance;
  try {
    const Real area = area_of(cert.vertices);
    if (!tol.equal(area, cert.target_area)) fail("area mismatch: shoelace area differs from target_area");
    if (!tol.equal(area, cert.measured_area)) fail("area mismatch: shoelace area differs from measured_area");

    const auto& v = cert.vertices;
    switch (cert.kind) {
      case ShapeKind::IsoscelesTriangle:
        if (!is_isosceles({v[0], v[1], v[2]}, 0, tol)) fail("shape: sides at the apex differ");
        break;
      case ShapeKind::RightTriangle:
        if (!is_right_angled({v[0], v[1], v[2]}, 2, tol)) fail("shape: no right angle at vertex 2");
        break;
      case ShapeKind::IsoscelesTrapezoid:
        if (!is_isosceles_trapezoid({v[0], v[1], v[2], v[3]}, tol)) fail("shape: not an isosceles trapezoid");
        break;
    }
  } catch (const Error& e) {
    fail(std::string("shape: ") + e.what());
  }
  return report;
}

}  // namespace twistfind
