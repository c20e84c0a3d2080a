#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twistfind/geometry.hpp"
#include "twistfind/locator.hpp"
#include "twistfind/planar_set.hpp"

namespace twistfind {

enum class ShapeKind { IsoscelesTriangle, RightTriangle, IsoscelesTrapezoid };

std::string_view to_string(ShapeKind kind);
std::optional<ShapeKind> shape_kind_from_string(std::string_view name);

struct ContextSummary {
  Point A;
  Real epsilon = 0;
  Point O;
  Real d = 0;
  Real C = 0;
  std::optional<Real> R;
  Frame frame;
};

/// Vertices in original coordinates plus everything needed to re-check
/// them. Vertex order: (O, p, f(p)) for isosceles triangles with the apex
/// first; (O, p, g(p)) for right triangles with the right angle last;
/// (p, f(p), f(p)/R, p/R) for trapezoids.
struct ShapeCertificate {
  ShapeKind kind = ShapeKind::IsoscelesTriangle;
  std::vector<Point> vertices;
  Real target_area = 1;
  Real measured_area = 0;
  std::vector<Real> side_lengths;
  Tolerance tolerance;
  ContextSummary context;
  std::string config_hash;
};

struct SearchFailure {
  FailureKind kind = FailureKind::NoDensityPoint;
  Diagnostics diagnostics;
};

class SearchOutcome {
 public:
  SearchOutcome(ShapeCertificate cert, Diagnostics diagnostics)
      : result_(std::move(cert)), diagnostics_(std::move(diagnostics)) {}
  SearchOutcome(SearchFailure failure) : result_(failure), diagnostics_(failure.diagnostics) {}

  bool ok() const { return std::holds_alternative<ShapeCertificate>(result_); }
  const ShapeCertificate& certificate() const { return std::get<ShapeCertificate>(result_); }
  const SearchFailure& failure() const { return std::get<SearchFailure>(result_); }
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  std::variant<ShapeCertificate, SearchFailure> result_;
  Diagnostics diagnostics_;
};

struct SearchOptions {
  Tolerance tolerance;
  /// Copied into the certificate's config_hash field.
  std::string provenance;
};

SearchOutcome find_isosceles_triangle(const PlanarSet& s, Real area, const LocatorConfig& cfg,
                                      const SearchOptions& options = {});
SearchOutcome find_right_triangle(const PlanarSet& s, Real area, const LocatorConfig& cfg,
                                  const SearchOptions& options = {});
SearchOutcome find_isosceles_trapezoid(const PlanarSet& s, Real area, const LocatorConfig& cfg,
                                       const SearchOptions& options = {});

SearchOutcome find_shape(ShapeKind kind, const PlanarSet& s, Real area, const LocatorConfig& cfg,
                         const SearchOptions& options = {});

struct VerificationReport {
  bool ok = true;
  std::vector<std::string> reasons;
};

/// Re-checks a certificate from its raw vertices with the geometry kernel
/// only: membership of every vertex, shoelace area against both recorded
/// areas, and the shape predicate.
VerificationReport verify_certificate(const ShapeCertificate& cert, const PlanarSet& s);

}  // namespace twistfind
