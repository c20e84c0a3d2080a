#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "twistfind/geometry.hpp"

namespace twistfind {

// Primitives are closed: boundary points are members.

struct Disk {
  Point center;
  Real radius = 1;
};

struct Rect {
  Point min;
  Point max;

  Real width() const { return max.x - min.x; }
  Real height() const { return max.y - min.y; }
  Point center() const { return (min + max) / 2; }
  bool contains(Point p) const { return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y; }
};

/// {p : normal . p <= offset}
struct HalfPlane {
  Point normal;
  Real offset = 0;
};

/// Dots of radius dot_radius centred at start + k * step, k = 0 .. count-1.
struct PointRow {
  Point start;
  Point step;
  std::size_t count = 0;
  Real dot_radius = 0;
};

using Primitive = std::variant<Disk, Rect, HalfPlane, PointRow>;

bool contains(const Primitive& prim, Point p);

/// Throws InvalidInput naming the offending field.
void validate(const Primitive& prim);

/// Union of `primitives` minus the union of `subtract`.
struct Scene {
  std::vector<Primitive> primitives;
  std::vector<Primitive> subtract;

  bool contains(Point p) const;

  /// Points that lie inside bounded primitives (disk and rect centres, dot
  /// centres). Useful scan seeds for sets too thin for a coarse lattice.
  std::vector<Point> feature_points(std::size_t max_count = 100000) const;
};

/// Boolean grid. Cell (i, j) has centre origin + (i h, j h); j grows with y.
class RasterMask {
 public:
  RasterMask(Point origin, Real cell, std::size_t width, std::size_t height);

  Point origin() const { return origin_; }
  Real cell() const { return cell_; }
  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  bool at(std::size_t i, std::size_t j) const { return bits_[j * width_ + i] != 0; }
  void set(std::size_t i, std::size_t j, bool value) { bits_[j * width_ + i] = value ? 1 : 0; }

  Point cell_center(std::size_t i, std::size_t j) const {
    return origin_ + Point{cell_ * static_cast<Real>(i), cell_ * static_cast<Real>(j)};
  }

  /// Bit of the cell containing p (half-open cells); false off the grid.
  bool contains(Point p) const;

  std::size_t count() const;
  Real measure() const { return static_cast<Real>(count()) * cell_ * cell_; }

  /// Rectangle covered by the cells.
  Rect extent() const;

  const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  Point origin_;
  Real cell_;
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> bits_;
};

/// A membership-testable region: a scene or a raster, optionally clipped
/// to a window that models the explored part of an unbounded set.
class PlanarSet {
 public:
  explicit PlanarSet(Scene scene, std::optional<Rect> window = std::nullopt);
  explicit PlanarSet(RasterMask mask, std::optional<Rect> window = std::nullopt);

  bool is_scene() const { return std::holds_alternative<Scene>(rep_); }
  const Scene* scene() const { return std::get_if<Scene>(&rep_); }
  const RasterMask* mask() const { return std::get_if<RasterMask>(&rep_); }
  const std::optional<Rect>& window() const { return window_; }

  /// The window, or the mask extent; nullopt for an unclipped scene.
  std::optional<Rect> bounds() const;

  bool contains(Point p) const;

 private:
  std::variant<Scene, RasterMask> rep_;
  std::optional<Rect> window_;
};

inline constexpr int kDefaultSamplesPerRadius = 32;

/// Visits the sample points used to estimate measure inside disk(center,
/// radius): cell centres of a raster, or a lattice of spacing radius / n
/// centred on `center` for scenes. Each sample stands for `weight` area.
template <typename Visitor>
void for_each_disk_sample(const PlanarSet& s, Point center, Real radius, int samples_per_radius,
                          Visitor&& visit) {
  if (const RasterMask* m = s.mask()) {
    const Real h = m->cell();
    const Point rel = center - m->origin();
    const auto lo = [&](Real v) { return static_cast<long long>(std::ceil((v - radius) / h)); };
    const auto hi = [&](Real v) { return static_cast<long long>(std::floor((v + radius) / h)); };
    const long long i0 = std::max(0LL, lo(rel.x));
    const long long i1 = std::min(static_cast<long long>(m->width()) - 1, hi(rel.x));
    const long long j0 = std::max(0LL, lo(rel.y));
    const long long j1 = std::min(static_cast<long long>(m->height()) - 1, hi(rel.y));
    const Real r2 = radius * radius;
    for (long long j = j0; j <= j1; ++j) {
      for (long long i = i0; i <= i1; ++i) {
        const Point c = m->cell_center(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        const Point d = c - center;
        if (dot(d, d) <= r2) visit(c, h * h);
      }
    }
    return;
  }
  const int n = samples_per_radius;
  const Real h = radius / static_cast<Real>(n);
  for (int j = -n; j <= n; ++j) {
    for (int i = -n; i <= n; ++i) {
      if (i * i + j * j > n * n) continue;
      visit(center + Point{h * i, h * j}, h * h);
    }
  }
}

/// Estimated measure of disk(center, radius) intersected with the set.
Real measure_in_disk(const PlanarSet& s, Point center, Real radius,
                     int samples_per_radius = kDefaultSamplesPerRadius);

/// Fraction of the disk's samples that lie in the set, in [0, 1]. The
/// lattice estimate of mu(B) is used as the denominator so that a disk
/// inside the set has density exactly 1.
Real density(const PlanarSet& s, Point center, Real radius,
             int samples_per_radius = kDefaultSamplesPerRadius);

/// Same estimate as density(), abandoned (nullopt) as soon as the misses
/// alone push it below `floor`.
std::optional<Real> density_at_least(const PlanarSet& s, Point center, Real radius, Real floor,
                                     int samples_per_radius = kDefaultSamplesPerRadius);

/// p in R.S about `center`: center + (p - center) / R is in the set.
bool scale_membership(const PlanarSet& s, Point p, Real ratio, Point center = {});

/// Membership in S intersected with R.S. Throws InvalidRatio if R <= 1.
bool s_r_contains(const PlanarSet& s, Point p, Real ratio, Point center = {});

/// Same estimate as density() but for S_R.
Real s_r_density(const PlanarSet& s, Point disk_center, Real radius, Real ratio, Point scale_center,
                 int samples_per_radius = kDefaultSamplesPerRadius);

inline constexpr std::size_t kDefaultRasterCap = 100'000'000;

/// Cell-centre sampling of the scene over the window.
RasterMask rasterize(const Scene& scene, const Rect& window, Real cell,
                     std::size_t cap = kDefaultRasterCap);

}  // namespace twistfind
