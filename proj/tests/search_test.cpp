#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "support.hpp"
#include "twistfind/search.hpp"

namespace twistfind {
namespace {

using testing::Gen;
using testing::load_scene;

const ShapeKind kAllKinds[] = {ShapeKind::IsoscelesTriangle, ShapeKind::RightTriangle, ShapeKind::IsoscelesTrapezoid};

bool has_reason(const VerificationReport& r, const std::string& prefix) {
  for (const std::string& s : r.reasons)
    if (s.rfind(prefix, 0) == 0) return true;
  return false;
}

Real angle_at(Point corner, Point a, Point b) {
  const Point u = a - corner, v = b - corner;
  return std::atan2(std::fabs(cross(u, v)), dot(u, v));
}

TEST(Isosceles, FullPlane) {
  const PlanarSet s = load_scene("fullplane.json");
  const SearchOutcome out = find_isosceles_triangle(s, 1, {});
  ASSERT_TRUE(out.ok()) << out.diagnostics().message;
  const ShapeCertificate& c = out.certificate();
  EXPECT_EQ(c.kind, ShapeKind::IsoscelesTriangle);
  ASSERT_EQ(c.vertices.size(), 3u);
  EXPECT_NEAR(static_cast<double>(c.measured_area), 1.0, 1e-9);
  EXPECT_EQ(c.vertices[0], c.context.O);
  EXPECT_NEAR(static_cast<double>(c.side_lengths[0]), static_cast<double>(c.side_lengths[2]), 1e-9);
  EXPECT_NEAR(static_cast<double>(c.side_lengths[0]), static_cast<double>(c.context.d), static_cast<double>(c.context.epsilon));
  EXPECT_TRUE(verify_certificate(c, s).ok);
  EXPECT_GT(out.diagnostics().containment_checks, 0u);
}

TEST(Isosceles, Strip) {
  const PlanarSet s = load_scene("strip.json");
  const SearchOutcome out = find_isosceles_triangle(s, 1, {});
  ASSERT_TRUE(out.ok()) << out.diagnostics().message;
  for (Point v : out.certificate().vertices) EXPECT_LE(std::fabs(v.y), 2);
  EXPECT_TRUE(verify_certificate(out.certificate(), s).ok);
}

TEST(Isosceles, BoundedDisk) {
  const PlanarSet s(Scene{{Disk{{0, 0}, 5}}, {}});
  const SearchOutcome out = find_isosceles_triangle(s, 1, {});
  ASSERT_FALSE(out.ok());
  EXPECT_EQ(out.failure().kind, FailureKind::NoFarPoint);
}

TEST(Right, FullPlane) {
  const PlanarSet s = load_scene("fullplane.json");
  const SearchOutcome out = find_right_triangle(s, 1, {});
  ASSERT_TRUE(out.ok()) << out.diagnostics().message;
  const auto& v = out.certificate().vertices;
  EXPECT_LE(std::fabs(angle_at(v[2], v[0], v[1]) - kPi / 2), 1e-9L);
  EXPECT_NEAR(static_cast<double>(triangle_area({v[0], v[1], v[2]})), 1.0, 1e-9);
  EXPECT_TRUE(verify_certificate(out.certificate(), s).ok);
}

TEST(Right, HalfPlaneAndEmpty) {
  const PlanarSet half(Scene{{HalfPlane{{-1, 0}, 0}}, {}}, Rect{{-1000, -1000}, {1000, 1000}});
  const SearchOutcome out = find_right_triangle(half, 1, {});
  ASSERT_TRUE(out.ok()) << out.diagnostics().message;
  for (Point v : out.certificate().vertices) EXPECT_GE(v.x, 0);
  EXPECT_TRUE(verify_certificate(out.certificate(), half).ok);

  const SearchOutcome none = find_right_triangle(load_scene("empty.json"), 1, {});
  ASSERT_FALSE(none.ok());
  EXPECT_EQ(none.failure().kind, FailureKind::NoDensityPoint);
}

TEST(Trapezoid, FullPlane) {
  const PlanarSet s = load_scene("fullplane.json");
  const SearchOutcome out = find_isosceles_trapezoid(s, 1, {});
  ASSERT_TRUE(out.ok()) << out.diagnostics().message;
  const ShapeCertificate& c = out.certificate();
  ASSERT_TRUE(c.context.R.has_value());
  EXPECT_EQ(*c.context.R, 128);
  EXPECT_NEAR(static_cast<double>(c.side_lengths[0] / c.side_lengths[2]), 128.0, 1e-9 * 128);
  EXPECT_NEAR(static_cast<double>(c.measured_area), 1.0, 1e-9);
  EXPECT_TRUE(verify_certificate(c, s).ok);
}

TEST(Trapezoid, DiskMinusDisk) {
  const PlanarSet s = load_scene("disk_minus_disk.json");
  const SearchOutcome out = find_isosceles_trapezoid(s, 1, {});
  ASSERT_TRUE(out.ok()) << out.diagnostics().message;
  const auto R = LocatorConfig::default_R_schedule();
  EXPECT_NE(std::find(R.begin(), R.end(), *out.certificate().context.R), R.end());
  EXPECT_TRUE(verify_certificate(out.certificate(), s).ok);
}

TEST(Trapezoid, Counterexample) {
  const PlanarSet s = load_scene("counterexample.json");
  const SearchOutcome out = find_isosceles_trapezoid(s, 1, {});
  ASSERT_FALSE(out.ok());
  EXPECT_TRUE(out.failure().kind == FailureKind::NoFarPoint || out.failure().kind == FailureKind::NoAdmissibleR);
}

TEST(Search, RejectsBadArguments) {
  const PlanarSet s = load_scene("fullplane.json");
  EXPECT_THROW(find_isosceles_triangle(s, -1, {}), Error);
  EXPECT_THROW(find_isosceles_triangle(s, 0, {}), Error);
  LocatorConfig small_c;
  small_c.C = 5;  // chord bound needs C > 2 pi area
  EXPECT_THROW(find_isosceles_triangle(s, 1, small_c), Error);
  SearchOptions bad_tol;
  bad_tol.tolerance = {0, 0};
  EXPECT_THROW(find_right_triangle(s, 1, {}, bad_tol), Error);
}

TEST(Search, OtherAreas) {
  const PlanarSet s = load_scene("strip.json");
  for (Real area : {0.25L, 3.0L}) {
    for (ShapeKind kind : kAllKinds) {
      const SearchOutcome out = find_shape(kind, s, area, {});
      ASSERT_TRUE(out.ok()) << to_string(kind) << ": " << out.diagnostics().message;
      EXPECT_NEAR(static_cast<double>(out.certificate().measured_area), static_cast<double>(area),
                  1e-9 * static_cast<double>(area));
      EXPECT_TRUE(verify_certificate(out.certificate(), s).ok);
    }
  }
}

TEST(Verify, PerturbedVertexFailsMembership) {
  const ShapeCertificate cert = find_isosceles_triangle(load_scene("fullplane.json"), 1, {}).certificate();
  const auto& v = cert.vertices;
  // Half-plane whose boundary passes through vertex 1 with the other two inside.
  const auto unit = [](Point p) { return p / norm(p); };
  const Point n = unit(unit(v[1] - v[0]) + unit(v[1] - v[2]));
  const PlanarSet s(Scene{{HalfPlane{n, dot(n, v[1])}}, {}}, Rect{{-2e4L, -2e4L}, {2e4L, 2e4L}});
  ASSERT_TRUE(verify_certificate(cert, s).ok);

  ShapeCertificate bad = cert;
  bad.vertices[1] = v[1] + 10 * cert.tolerance.abs_tol * n;
  const VerificationReport r = verify_certificate(bad, s);
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(has_reason(r, "membership"));
}

TEST(Verify, CorruptedAreaFails) {
  const PlanarSet s = load_scene("fullplane.json");
  for (ShapeKind kind : kAllKinds) {
    ShapeCertificate c = find_shape(kind, s, 1, {}).certificate();
    c.measured_area = 1.001L;
    VerificationReport r = verify_certificate(c, s);
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(has_reason(r, "area mismatch"));
    c.measured_area = 1;
    c.target_area = 2;
    r = verify_certificate(c, s);
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(has_reason(r, "area mismatch"));
  }
}

TEST(Verify, ShapeAndCountFailures) {
  const PlanarSet s = load_scene("fullplane.json");
  ShapeCertificate c = find_isosceles_triangle(s, 1, {}).certificate();
  ShapeCertificate wrong_kind = c;
  wrong_kind.kind = ShapeKind::RightTriangle;
  EXPECT_TRUE(has_reason(verify_certificate(wrong_kind, s), "shape"));
  ShapeCertificate short_list = c;
  short_list.vertices.pop_back();
  EXPECT_TRUE(has_reason(verify_certificate(short_list, s), "vertex count"));
  ShapeCertificate skewed = c;
  const Point out = skewed.vertices[2] - skewed.vertices[0];
  skewed.vertices[2] = skewed.vertices[2] + 1e-3L * out / norm(out);
  EXPECT_TRUE(has_reason(verify_certificate(skewed, s), "shape"));
}

// Random union of disks, rectangles and half-planes with a few holes.
PlanarSet random_scene(Gen& g) {
  Scene sc;
  const int n = 1 + static_cast<int>(g.bits() % 4);
  for (int i = 0; i < n; ++i) {
    switch (g.bits() % 3) {
      case 0: sc.primitives.push_back(Disk{g.point(300), g.uniform(2, 300)}); break;
      case 1: {
        const Point a = g.point(300);
        sc.primitives.push_back(Rect{a, a + Point{g.uniform(1, 400), g.uniform(1, 400)}});
        break;
      }
      default: {
        const Real t = g.angle();
        sc.primitives.push_back(HalfPlane{{std::cos(t), std::sin(t)}, g.uniform(-200, 200)});
      }
    }
  }
  for (int i = 0, m = static_cast<int>(g.bits() % 4); i < m; ++i) sc.subtract.push_back(Disk{g.point(300), g.uniform(0.5L, 30)});
  return PlanarSet(sc, Rect{{-400, -400}, {400, 400}});
}

TEST(Properties, SoundnessOnRandomScenes) {
  Gen g(71);
  LocatorConfig cfg;
  cfg.max_candidates = 512;
  int found = 0;
  for (int i = 0; i < 100; ++i) {
    const PlanarSet s = random_scene(g);
    for (ShapeKind kind : kAllKinds) {
      const SearchOutcome out = find_shape(kind, s, 1, cfg);
      if (!out.ok()) {
        EXPECT_NE(out.failure().kind, FailureKind::DomainError) << "scene " << i;
        continue;
      }
      ++found;
      const VerificationReport r = verify_certificate(out.certificate(), s);
      ASSERT_TRUE(r.ok) << "scene " << i << " " << to_string(kind) << ": " << r.reasons.front();
      EXPECT_GT(out.diagnostics().containment_checks, 0u);
    }
  }
  EXPECT_GT(found, 150);
}

// Scenes built from disks and half-planes so that an arbitrary rotation is
// still expressible.
Primitive moved(const Primitive& p, const testing::Isometry& iso) {
  if (const auto* d = std::get_if<Disk>(&p)) return Disk{iso(d->center), d->radius};
  const auto& h = std::get<HalfPlane>(p);
  const Point n = rotate(h.normal, iso.angle);
  return HalfPlane{n, h.offset + dot(n, iso.shift)};
}

TEST(Properties, FrameInvariance) {
  Gen g(73);
  const Scene base_scenes[] = {
      Scene{{Disk{{0, 0}, 1e4L}}, {Disk{{0, 0}, 1}}},
      Scene{{HalfPlane{{1, 0}, 0}}, {}},
      Scene{{HalfPlane{{0, 1}, 2}, Disk{{50, 50}, 30}}, {Disk{{-10, 0}, 3}}},
  };
  const Rect window{{-600, -600}, {600, 600}};
  for (const Scene& base : base_scenes) {
    for (int k = 0; k < 4; ++k) {
      const testing::Isometry iso = testing::random_isometry(g, 1e3L);
      Scene sc;
      for (const auto& p : base.primitives) sc.primitives.push_back(moved(p, iso));
      for (const auto& p : base.subtract) sc.subtract.push_back(moved(p, iso));
      const PlanarSet s(sc, Rect{window.min + iso.shift, window.max + iso.shift});
      for (ShapeKind kind : kAllKinds) {
        const SearchOutcome out = find_shape(kind, s, 1, {});
        ASSERT_TRUE(out.ok()) << to_string(kind) << ": " << out.diagnostics().message;
        EXPECT_TRUE(verify_certificate(out.certificate(), s).ok);
      }
    }
  }
}

TEST(Properties, DenseScenesNeverMissTheImage) {
  Gen g(79);
  LocatorConfig cfg;
  cfg.density_samples = 100;  // sample spacing epsilon / 100
  cfg.scan_samples = 100;
  cfg.max_candidates = 256;
  for (int i = 0; i < 20; ++i) {
    // A 4 x 4 square perforated by a grid of small holes (density between
    // 0.90 and 0.97) and a tiny far disk that can host O but not A.
    const Point c = g.point(50);
    const Real hole = g.uniform(0.02L, 0.035L);
    Scene sc;
    sc.primitives.push_back(Rect{c - Point{2, 2}, c + Point{2, 2}});
    sc.primitives.push_back(Disk{c + from_polar({300, g.angle()}), 0.1L});
    for (int j = 0; j < 20; ++j) sc.subtract.push_back(PointRow{c + Point{-1.9L, -1.9L + 0.2L * j}, {0.2L, 0}, 20, hole});
    const PlanarSet s(sc, Rect{{c.x - 400, c.y - 400}, {c.x + 400, c.y + 400}});
    for (ShapeKind kind : kAllKinds) {
      const SearchOutcome out = find_shape(kind, s, 1, cfg);
      if (kind == ShapeKind::IsoscelesTriangle) {
        ASSERT_TRUE(out.ok()) << out.diagnostics().message;
        EXPECT_LT(out.diagnostics().best_density, 1);
      }
      if (out.ok()) {
        EXPECT_TRUE(verify_certificate(out.certificate(), s).ok);
      } else {
        EXPECT_NE(out.failure().kind, FailureKind::ImageNeverLands) << out.diagnostics().message;
      }
    }
  }
}

TEST(Search, Deterministic) {
  const PlanarSet s = load_scene("halfplane.json");
  for (ShapeKind kind : kAllKinds) {
    const SearchOutcome a = find_shape(kind, s, 1, {}), b = find_shape(kind, s, 1, {});
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_EQ(a.certificate().vertices, b.certificate().vertices);
  }
}

}  // namespace
}  // namespace twistfind
