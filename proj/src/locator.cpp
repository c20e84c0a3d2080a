#include "twistfind/locator.hpp"

#include <algorithm>
#include <sstream>

namespace twistfind {

std::string_view to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::NoDensityPoint: return "NoDensityPoint";
    case FailureKind::NoFarPoint: return "NoFarPoint";
    case FailureKind::NoAdmissibleR: return "NoAdmissibleR";
    case FailureKind::ImageNeverLands: return "ImageNeverLands";
    case FailureKind::DomainError: return "DomainError";
  }
  return "Unknown";
}

std::vector<Real> LocatorConfig::default_R_schedule() {
  std::vector<Real> out;
  for (Real r = 128; r <= (1 << 20); r *= 2) out.push_back(r);
  return out;
}

namespace {

[[noreturn]] void bad_config(const std::string& field, const std::string& why) {
  throw Error(Errc::InvalidConfig, "locator." + field + ": " + why);
}

bool in_unit_interval(Real v) { return v > 0 && v <= 1; }

}  // namespace

void LocatorConfig::validate() const {
  if (!(C > 0) || !std::isfinite(C)) bad_config("C", "must be positive");
  if (!in_unit_interval(density_threshold)) bad_config("density_threshold", "must lie in (0, 1]");
  if (!in_unit_interval(trapezoid_threshold)) bad_config("trapezoid_threshold", "must lie in (0, 1]");
  if (!in_unit_interval(full_density)) bad_config("full_density", "must lie in (0, 1]");
  if (epsilon_schedule.empty()) bad_config("epsilon_schedule", "must not be empty");
  for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
    const Real e = epsilon_schedule[i];
    if (!(e > 0 && e < 1)) bad_config("epsilon_schedule", "entries must lie in (0, 1)");
    if (i > 0 && !(e < epsilon_schedule[i - 1])) bad_config("epsilon_schedule", "must be strictly decreasing");
  }
  if (R_schedule.empty()) bad_config("R_schedule", "must not be empty");
  for (std::size_t i = 0; i < R_schedule.size(); ++i) {
    const Real r = R_schedule[i];
    if (!(r > 100) || !std::isfinite(r)) bad_config("R_schedule", "entries must exceed 100");
    if (i > 0 && !(r > R_schedule[i - 1])) bad_config("R_schedule", "must be strictly increasing");
  }
  if (!(sample_grid_step > 0)) bad_config("sample_grid_step", "must be positive");
  if (max_candidates == 0) bad_config("max_candidates", "must be positive");
  if (delta_divisors.empty()) bad_config("delta_divisors", "must not be empty");
  for (Real v : delta_divisors) {
    if (!(v >= 1)) bad_config("delta_divisors", "entries must be >= 1");
  }
  if (density_samples < 4) bad_config("density_samples", "must be >= 4");
  if (scan_samples < 4) bad_config("scan_samples", "must be >= 4");
}

Point Frame::apply(Point p) const { return rotate(p + translation, rotation); }

Point Frame::inverse(Point q) const { return rotate(q, -rotation) - translation; }

Frame build_frame(Point O, Point A) {
  if (O == A) throw Error(Errc::CoincidentPoints, "O and A coincide");
  const Point axis = A - O;
  return {-O, -std::atan2(axis.y, axis.x)};
}

SearchContext make_context(Point A, Real epsilon, Point O, Real C) {
  if (!(epsilon > 0 && epsilon < 1)) throw Error(Errc::InvalidConfig, "epsilon must lie in (0, 1)");
  const Real d = distance(O, A);
  if (!(d > C / epsilon + epsilon)) {
    throw Error(Errc::InvalidConfig, "far point too close: d must exceed C/epsilon + epsilon");
  }
  if (!(d - epsilon > C)) throw Error(Errc::InvalidConfig, "B and D overlap");
  SearchContext ctx;
  ctx.A = A;
  ctx.epsilon = epsilon;
  ctx.O = O;
  ctx.d = d;
  ctx.C = C;
  ctx.frame = build_frame(O, A);
  ctx.B = {A, epsilon};
  ctx.B_prime = {A, epsilon / 2};
  ctx.D = {O, C};
  return ctx;
}

namespace {

Rect search_bounds(const PlanarSet& s) {
  if (auto b = s.bounds()) return *b;
  // Unclipped scene: the bounding box of its primitives, when they are bounded.
  const Scene& scene = *s.scene();
  bool any = false;
  Rect box{};
  const auto grow = [&](Point lo, Point hi) {
    if (!any) {
      box = {lo, hi};
      any = true;
      return;
    }
    box.min = {std::min(box.min.x, lo.x), std::min(box.min.y, lo.y)};
    box.max = {std::max(box.max.x, hi.x), std::max(box.max.y, hi.y)};
  };
  for (const Primitive& prim : scene.primitives) {
    if (const auto* d = std::get_if<Disk>(&prim)) {
      grow(d->center - Point{d->radius, d->radius}, d->center + Point{d->radius, d->radius});
    } else if (const auto* r = std::get_if<Rect>(&prim)) {
      grow(r->min, r->max);
    } else if (const auto* row = std::get_if<PointRow>(&prim)) {
      const Point end = row->start + static_cast<Real>(row->count - 1) * row->step;
      const Point pad{row->dot_radius, row->dot_radius};
      grow(Point{std::min(row->start.x, end.x), std::min(row->start.y, end.y)} - pad,
           Point{std::max(row->start.x, end.x), std::max(row->start.y, end.y)} + pad);
    } else {
      throw Error(Errc::InvalidInput, "window: required for scenes containing half-planes");
    }
  }
  if (!any) throw Error(Errc::InvalidInput, "window: required for an empty unclipped scene");
  return box;
}

std::size_t lattice_count(Real half_w, Real half_h, Real step) {
  const Real nx = 2 * std::floor(half_w / step) + 1;
  const Real ny = 2 * std::floor(half_h / step) + 1;
  const Real n = nx * ny;
  return n > 1e18L ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(n);
}

struct Ranked {
  Point p;
  Real key;
};

void sort_ranked(std::vector<Ranked>& v) {
  std::sort(v.begin(), v.end(), [](const Ranked& a, const Ranked& b) {
    if (a.key != b.key) return a.key < b.key;
    return lex_less(a.p, b.p);
  });
}

}  // namespace

std::vector<Point> candidate_points(const PlanarSet& s, const LocatorConfig& cfg) {
  const Rect box = search_bounds(s);
  const Point c = box.center();
  const Real half_w = box.width() / 2;
  const Real half_h = box.height() / 2;
  Real step = cfg.sample_grid_step;
  while (lattice_count(half_w, half_h, step) > cfg.max_candidates) step *= 1.125L;

  std::vector<Point> out;
  const long long kx = static_cast<long long>(std::floor(half_w / step));
  const long long ky = static_cast<long long>(std::floor(half_h / step));
  out.reserve(static_cast<std::size_t>((2 * kx + 1) * (2 * ky + 1)));
  for (long long j = -ky; j <= ky; ++j) {
    for (long long i = -kx; i <= kx; ++i) {
      out.push_back(c + Point{step * static_cast<Real>(i), step * static_cast<Real>(j)});
    }
  }
  if (const Scene* scene = s.scene()) {
    for (Point f : scene->feature_points()) {
      if (box.contains(f)) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Real full_density_radius(const PlanarSet& s, Real epsilon, const LocatorConfig& cfg) {
  const Real divisor = *std::max_element(cfg.delta_divisors.begin(), cfg.delta_divisors.end());
  Real delta = epsilon / divisor;
  // A raster cannot resolve disks only a few cells wide.
  if (const RasterMask* m = s.mask()) delta = std::max(delta, 4 * m->cell());
  return delta;
}

DensityPoint find_density_point(const PlanarSet& s, const LocatorConfig& cfg) {
  cfg.validate();
  const std::vector<Point> candidates = candidate_points(s, cfg);
  std::vector<Point> members;
  for (Point p : candidates) {
    if (s.contains(p)) members.push_back(p);
  }
  Diagnostics diag;
  for (Real eps : cfg.epsilon_schedule) {
    std::optional<DensityPoint> best;
    for (Point p : members) {
      ++diag.cells_scanned;
      const std::optional<Real> rho = density_at_least(s, p, eps, cfg.density_threshold, cfg.density_samples);
      if (!rho) continue;
      diag.best_density = std::max(diag.best_density, *rho);
      if (*rho > cfg.density_threshold && (!best || *rho > best->density)) best = DensityPoint{p, eps, *rho};
      if (best && best->density >= 1) break;  // later candidates can only tie
    }
    if (best) return *best;
  }
  std::ostringstream msg;
  msg << members.size() << " of " << candidates.size()
      << " candidate points lie in the set; none has density above " << static_cast<double>(cfg.density_threshold)
      << " at any scheduled epsilon";
  diag.message = msg.str();
  throw HypothesisNotMet(FailureKind::NoDensityPoint, diag);
}

Point find_far_point(const PlanarSet& s, Point A, Real epsilon, const LocatorConfig& cfg, SearchMode mode) {
  cfg.validate();
  const Real required = cfg.C / epsilon + epsilon;
  std::vector<Ranked> far;
  for (Point p : candidate_points(s, cfg)) {
    const Real d = distance(p, A);
    if (d > required && s.contains(p)) far.push_back({p, d});
  }
  sort_ranked(far);

  const Real delta = full_density_radius(s, epsilon, cfg);
  Diagnostics diag;
  for (const Ranked& r : far) {
    ++diag.cells_scanned;
    const std::optional<Real> rho = density_at_least(s, r.p, delta, cfg.full_density, cfg.density_samples);
    if (!rho) continue;
    diag.best_density = std::max(diag.best_density, *rho);
    if (*rho >= cfg.full_density) return r.p;
  }
  if (mode == SearchMode::Triangle && !far.empty()) return far.front().p;

  std::ostringstream msg;
  msg << "need d(O, A) > " << static_cast<double>(required) << "; " << far.size()
      << " member candidates are that far";
  if (mode == SearchMode::Trapezoid) {
    msg << " and none reaches density " << static_cast<double>(cfg.full_density) << " at radius "
        << static_cast<double>(delta);
  }
  diag.message = msg.str();
  throw HypothesisNotMet(FailureKind::NoFarPoint, diag);
}

Real choose_R(const PlanarSet& s, const SearchContext& ctx, const LocatorConfig& cfg) {
  cfg.validate();
  Diagnostics diag;
  for (Real R : cfg.R_schedule) {
    const Real rho = s_r_density(s, ctx.A, ctx.epsilon, R, ctx.O, cfg.density_samples);
    ++diag.cells_scanned;
    diag.best_density = std::max(diag.best_density, rho);
    if (rho > cfg.trapezoid_threshold) return R;
  }
  std::ostringstream msg;
  msg << "no scheduled R gives mu(B & S_R)/mu(B) > " << static_cast<double>(cfg.trapezoid_threshold);
  diag.message = msg.str();
  throw HypothesisNotMet(FailureKind::NoAdmissibleR, diag);
}

}  // namespace twistfind
