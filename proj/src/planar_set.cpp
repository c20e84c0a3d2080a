#include "twistfind/planar_set.hpp"

#include <string>

namespace twistfind {

namespace {

struct PrimitiveContains {
  Point p;

  bool operator()(const Disk& d) const {
    const Point v = p - d.center;
    return dot(v, v) <= d.radius * d.radius;
  }
  bool operator()(const Rect& r) const { return r.contains(p); }
  bool operator()(const HalfPlane& h) const { return dot(h.normal, p) <= h.offset; }
  bool operator()(const PointRow& row) const {
    if (row.count == 0) return false;
    const Real step2 = dot(row.step, row.step);
    const Real r2 = row.dot_radius * row.dot_radius;
    const auto hit = [&](long long k) {
      if (k < 0 || k >= static_cast<long long>(row.count)) return false;
      const Point v = p - (row.start + static_cast<Real>(k) * row.step);
      return dot(v, v) <= r2;
    };
    if (step2 == 0) return hit(0);
    const Real t = dot(p - row.start, row.step) / step2;
    const Real last = static_cast<Real>(row.count - 1);
    const long long k = std::llround(std::clamp<Real>(t, 0, last));
    return hit(k) || hit(k - 1) || hit(k + 1);
  }
};

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(Errc::InvalidInput, field + ": " + why);
}

}  // namespace

bool contains(const Primitive& prim, Point p) { return std::visit(PrimitiveContains{p}, prim); }

void validate(const Primitive& prim) {
  struct Check {
    void operator()(const Disk& d) const {
      if (!finite(d.center)) invalid("center", "must be finite");
      if (!(d.radius > 0) || !std::isfinite(d.radius)) invalid("radius", "must be > 0");
    }
    void operator()(const Rect& r) const {
      if (!finite(r.min) || !finite(r.max)) invalid("min/max", "must be finite");
      if (!(r.width() > 0) || !(r.height() > 0)) invalid("max", "must exceed min in both coordinates");
    }
    void operator()(const HalfPlane& h) const {
      if (!finite(h.normal) || !std::isfinite(h.offset)) invalid("normal/offset", "must be finite");
      if (h.normal.x == 0 && h.normal.y == 0) invalid("normal", "must be nonzero");
    }
    void operator()(const PointRow& row) const {
      if (!finite(row.start) || !finite(row.step)) invalid("start/step", "must be finite");
      if (row.count == 0) invalid("count", "must be >= 1");
      if (row.count > 1 && row.step.x == 0 && row.step.y == 0) invalid("step", "must be nonzero");
      if (!(row.dot_radius > 0) || !std::isfinite(row.dot_radius)) invalid("dot_radius", "must be > 0");
    }
  };
  std::visit(Check{}, prim);
}

bool Scene::contains(Point p) const {
  const auto hit = [p](const Primitive& prim) { return twistfind::contains(prim, p); };
  return std::any_of(primitives.begin(), primitives.end(), hit) &&
         std::none_of(subtract.begin(), subtract.end(), hit);
}

std::vector<Point> Scene::feature_points(std::size_t max_count) const {
  std::vector<Point> out;
  for (const Primitive& prim : primitives) {
    if (out.size() >= max_count) break;
    if (const auto* d = std::get_if<Disk>(&prim)) {
      out.push_back(d->center);
    } else if (const auto* r = std::get_if<Rect>(&prim)) {
      out.push_back(r->center());
    } else if (const auto* row = std::get_if<PointRow>(&prim)) {
      for (std::size_t k = 0; k < row->count && out.size() < max_count; ++k) {
        out.push_back(row->start + static_cast<Real>(k) * row->step);
      }
    }
  }
  return out;
}

RasterMask::RasterMask(Point origin, Real cell, std::size_t width, std::size_t height)
    : origin_(origin), cell_(cell), width_(width), height_(height) {
  if (!(cell > 0) || !std::isfinite(cell)) throw Error(Errc::InvalidInput, "cell: must be > 0");
  if (width == 0 || height == 0) throw Error(Errc::InvalidInput, "mask dimensions must be positive");
  bits_.assign(width * height, 0);
}

bool RasterMask::contains(Point p) const {
  const Real fi = std::floor((p.x - origin_.x) / cell_ + 0.5L);
  const Real fj = std::floor((p.y - origin_.y) / cell_ + 0.5L);
  if (fi < 0 || fj < 0 || fi >= static_cast<Real>(width_) || fj >= static_cast<Real>(height_)) return false;
  return at(static_cast<std::size_t>(fi), static_cast<std::size_t>(fj));
}

std::size_t RasterMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Rect RasterMask::extent() const {
  const Point half{cell_ / 2, cell_ / 2};
  return {origin_ - half,
          origin_ - half + Point{cell_ * static_cast<Real>(width_), cell_ * static_cast<Real>(height_)}};
}

namespace {

void check_window(const std::optional<Rect>& window) {
  if (window && (!(window->width() > 0) || !(window->height() > 0))) {
    throw Error(Errc::InvalidInput, "window: must have positive area");
  }
}

}  // namespace

PlanarSet::PlanarSet(Scene scene, std::optional<Rect> window) : rep_(std::move(scene)), window_(window) {
  check_window(window_);
  for (const Primitive& p : std::get<Scene>(rep_).primitives) validate(p);
  for (const Primitive& p : std::get<Scene>(rep_).subtract) validate(p);
}

PlanarSet::PlanarSet(RasterMask mask, std::optional<Rect> window) : rep_(std::move(mask)), window_(window) {
  check_window(window_);
}

std::optional<Rect> PlanarSet::bounds() const {
  if (window_) return window_;
  if (const RasterMask* m = mask()) return m->extent();
  return std::nullopt;
}

bool PlanarSet::contains(Point p) const {
  if (window_ && !window_->contains(p)) return false;
  return std::visit([p](const auto& rep) { return rep.contains(p); }, rep_);
}

Real measure_in_disk(const PlanarSet& s, Point center, Real radius, int samples_per_radius) {
  Real total = 0;
  for_each_disk_sample(s, center, radius, samples_per_radius, [&](Point q, Real w) {
    if (s.contains(q)) total += w;
  });
  return total;
}

namespace {

// Total weight of the sampling lattice inside the disk, counting mask cells
// that fall off the grid (they are outside the set, not outside the disk).
Real disk_sample_weight(const PlanarSet& s, Point center, Real radius, int samples_per_radius) {
  if (const RasterMask* m = s.mask()) {
    const Real h = m->cell();
    const Point rel = center - m->origin();
    const auto i0 = static_cast<long long>(std::ceil((rel.x - radius) / h));
    const auto i1 = static_cast<long long>(std::floor((rel.x + radius) / h));
    const auto j0 = static_cast<long long>(std::ceil((rel.y - radius) / h));
    const auto j1 = static_cast<long long>(std::floor((rel.y + radius) / h));
    long long count = 0;
    for (long long j = j0; j <= j1; ++j) {
      for (long long i = i0; i <= i1; ++i) {
        const Point d = m->origin() + Point{h * static_cast<Real>(i), h * static_cast<Real>(j)} - center;
        if (dot(d, d) <= radius * radius) ++count;
      }
    }
    return static_cast<Real>(count) * h * h;
  }
  const int n = samples_per_radius;
  long long count = 0;
  for (int j = -n; j <= n; ++j)
    for (int i = -n; i <= n; ++i)
      if (i * i + j * j <= n * n) ++count;
  const Real h = radius / static_cast<Real>(n);
  return static_cast<Real>(count) * h * h;
}

Real ratio_in_unit(Real part, Real whole) { return whole > 0 ? std::clamp<Real>(part / whole, 0, 1) : 0; }

}  // namespace

Real density(const PlanarSet& s, Point center, Real radius, int samples_per_radius) {
  return ratio_in_unit(measure_in_disk(s, center, radius, samples_per_radius),
                       disk_sample_weight(s, center, radius, samples_per_radius));
}

std::optional<Real> density_at_least(const PlanarSet& s, Point center, Real radius, Real floor,
                                     int samples_per_radius) {
  const Real whole = disk_sample_weight(s, center, radius, samples_per_radius);
  if (!(whole > 0)) return floor <= 0 ? std::optional<Real>(0) : std::nullopt;
  const Real max_miss = (1 - floor) * whole;
  Real hit = 0, miss = 0;
  bool abandoned = false;
  for_each_disk_sample(s, center, radius, samples_per_radius, [&](Point q, Real w) {
    if (abandoned) return;
    if (s.contains(q)) {
      hit += w;
    } else if ((miss += w) > max_miss) {
      abandoned = true;
    }
  });
  // Off-grid mask cells are never visited; they count as misses.
  if (abandoned || whole - hit > max_miss) return std::nullopt;
  return ratio_in_unit(hit, whole);
}

bool scale_membership(const PlanarSet& s, Point p, Real ratio, Point center) {
  if (!(ratio > 0)) throw Error(Errc::InvalidRatio, "scale factor must be positive");
  return s.contains(center + (p - center) / ratio);
}

bool s_r_contains(const PlanarSet& s, Point p, Real ratio, Point center) {
  if (!(ratio > 1)) throw Error(Errc::InvalidRatio, "S_R needs R > 1");
  return s.contains(p) && scale_membership(s, p, ratio, center);
}

Real s_r_density(const PlanarSet& s, Point disk_center, Real radius, Real ratio, Point scale_center,
                 int samples_per_radius) {
  if (!(ratio > 1)) throw Error(Errc::InvalidRatio, "S_R needs R > 1");
  Real total = 0;
  for_each_disk_sample(s, disk_center, radius, samples_per_radius, [&](Point q, Real w) {
    if (s_r_contains(s, q, ratio, scale_center)) total += w;
  });
  return ratio_in_unit(total, disk_sample_weight(s, disk_center, radius, samples_per_radius));
}

RasterMask rasterize(const Scene& scene, const Rect& window, Real cell, std::size_t cap) {
  if (!(cell > 0) || !std::isfinite(cell)) throw Error(Errc::InvalidInput, "h: must be > 0");
  if (!(window.width() > 0) || !(window.height() > 0)) {
    throw Error(Errc::InvalidInput, "window: must have positive area");
  }
  const Real nx = std::ceil(window.width() / cell - 1e-9L);
  const Real ny = std::ceil(window.height() / cell - 1e-9L);
  if (nx < 1 || ny < 1 || nx * ny > static_cast<Real>(cap)) {
    throw Error(Errc::ResolutionTooCoarse,
                "CapExceeded: grid of " + std::to_string(static_cast<double>(nx)) + " x " +
                    std::to_string(static_cast<double>(ny)) + " cells exceeds the cap of " +
                    std::to_string(cap));
  }
  RasterMask mask(window.min + Point{cell / 2, cell / 2}, cell, static_cast<std::size_t>(nx),
                  static_cast<std::size_t>(ny));
  for (std::size_t j = 0; j < mask.height(); ++j) {
    for (std::size_t i = 0; i < mask.width(); ++i) {
      mask.set(i, j, scene.contains(mask.cell_center(i, j)));
    }
  }
  return mask;
}

}  // namespace twistfind
