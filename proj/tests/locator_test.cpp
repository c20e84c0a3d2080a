#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "twistfind/locator.hpp"

namespace twistfind {
namespace {

using testing::Gen;
using testing::load_scene;

template <typename F>
FailureKind failure_of(F&& f) {
  try {
    f();
  } catch (const HypothesisNotMet& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected HypothesisNotMet";
  return FailureKind::DomainError;
}

TEST(Config, Validation) {
  EXPECT_NO_THROW(LocatorConfig{}.validate());
  LocatorConfig c;
  c.density_threshold = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.epsilon_schedule = {0.1L, 0.5L};
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.epsilon_schedule = {1.0L};
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.R_schedule = {64};
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.epsilon_schedule.clear();
  EXPECT_THROW(c.validate(), Error);
  const auto R = LocatorConfig::default_R_schedule();
  EXPECT_EQ(R.front(), 128);
  EXPECT_EQ(R.back(), 1048576);
  EXPECT_EQ(R.size(), 14u);
}

TEST(DensityPoint, HalfPlane) {
  const PlanarSet s = load_scene("halfplane.json");
  const LocatorConfig cfg;
  const DensityPoint dp = find_density_point(s, cfg);
  EXPECT_EQ(dp.epsilon, 0.5L);
  EXPECT_TRUE(s.contains(dp.A));
  EXPECT_LE(dp.A.x, -dp.epsilon);
  EXPECT_GT(density(s, dp.A, dp.epsilon, cfg.density_samples), 0.9L);
}

TEST(DensityPoint, EmptySet) {
  EXPECT_EQ(failure_of([] { find_density_point(load_scene("empty.json"), {}); }), FailureKind::NoDensityPoint);
}

TEST(DensityPoint, CounterexampleAnchorsInTheSmallDisk) {
  const PlanarSet s = load_scene("counterexample.json");
  const DensityPoint dp = find_density_point(s, {});
  EXPECT_LE(dp.epsilon, 0.1L);
  EXPECT_LE(norm(dp.A), 0.1L);
  EXPECT_GT(density(s, dp.A, dp.epsilon), 0.9L);
}

TEST(DensityPoint, RecomputedInequalityHolds) {
  Gen g(61);
  const LocatorConfig cfg;
  for (int i = 0; i < 30; ++i) {
    Scene sc;
    for (int k = 0; k < 3; ++k) sc.primitives.push_back(Disk{g.point(20), g.uniform(0.3L, 4)});
    const PlanarSet s(sc, Rect{{-25, -25}, {25, 25}});
    try {
      const DensityPoint dp = find_density_point(s, cfg);
      EXPECT_TRUE(s.contains(dp.A));
      EXPECT_GT(density(s, dp.A, dp.epsilon, cfg.density_samples), cfg.density_threshold);
    } catch (const HypothesisNotMet& e) {
      EXPECT_EQ(e.kind(), FailureKind::NoDensityPoint);
    }
  }
}

TEST(FarPoint, Strip) {
  const PlanarSet s(Scene{{Rect{{-1e4L, -1}, {1e4L, 1}}}, {}}, Rect{{-1e4L, -4}, {1e4L, 4}});
  const LocatorConfig cfg;
  const Point A{0, 0};
  const Point O = find_far_point(s, A, 0.5L, cfg);
  EXPECT_TRUE(s.contains(O));
  EXPECT_GT(distance(O, A), 200.5L);
  EXPECT_LT(distance(O, A), 250);
  EXPECT_GE(density(s, O, 0.5L / 16), 0.99L);
  const Point T = find_far_point(s, A, 0.5L, cfg, SearchMode::Trapezoid);
  EXPECT_GT(distance(T, A), 200.5L);
}

TEST(FarPoint, BoundedDisk) {
  const PlanarSet s(Scene{{Disk{{0, 0}, 50}}, {}}, Rect{{-50, -50}, {50, 50}});
  EXPECT_EQ(failure_of([&] { find_far_point(s, {0, 0}, 0.5L, {}); }), FailureKind::NoFarPoint);
}

TEST(FarPoint, CounterexampleTrapezoidMode) {
  const PlanarSet s = load_scene("counterexample.json");
  EXPECT_EQ(failure_of([&] { find_far_point(s, {0, 0}, 0.1L, {}, SearchMode::Trapezoid); }), FailureKind::NoFarPoint);
  // Triangle mode accepts a bare dot, which is a point of S.
  const Point O = find_far_point(s, {0, 0}, 0.1L, {});
  EXPECT_TRUE(s.contains(O));
  EXPECT_GT(distance(O, {0, 0}), 100 / 0.1L + 0.1L);
}

TEST(Frame, Examples) {
  const Frame id = build_frame({0, 0}, {3, 0});
  EXPECT_EQ(id.apply({3, 0}), (Point{3, 0}));
  EXPECT_EQ(id.rotation, 0);

  const Frame f = build_frame({1, 1}, {1, 4});
  EXPECT_EQ(f.translation, (Point{-1, -1}));
  EXPECT_NEAR(static_cast<double>(f.rotation), -M_PI / 2, 1e-15);
  const Point a = f.apply({1, 4});
  EXPECT_NEAR(static_cast<double>(a.x), 3.0, 1e-15);
  EXPECT_NEAR(static_cast<double>(a.y), 0.0, 1e-15);
  EXPECT_EQ(f.apply({1, 1}), (Point{0, 0}));

  try {
    build_frame({2, 2}, {2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CoincidentPoints);
  }
}

TEST(Frame, IsometryProperty) {
  Gen g(67);
  for (int k = 0; k < 10; ++k) {
    const Point O = g.point(1e4L), A = g.point(1e4L);
    const Frame f = build_frame(O, A);
    const Point a = f.apply(A);
    EXPECT_LE(std::fabs(a.y), 1e-12L * distance(O, A));
    EXPECT_GT(a.x, 0);
    for (int i = 0; i < 1000; ++i) {
      const Point p = g.point(1e4L), q = g.point(1e4L);
      ASSERT_LE(testing::rel_diff(distance(f.apply(p), f.apply(q)), distance(p, q)), 1e-12L);
      ASSERT_LE(distance(f.inverse(f.apply(p)), p), 1e-12L * std::max<Real>(1, norm(p)));
    }
  }
}

TEST(Context, Invariants) {
  const SearchContext ctx = make_context({300, 0}, 0.5L, {0, 0}, 100);
  EXPECT_EQ(ctx.d, 300);
  EXPECT_EQ(ctx.B.radius, 0.5L);
  EXPECT_EQ(ctx.B_prime.radius, 0.25L);
  EXPECT_EQ(ctx.D.radius, 100);
  EXPECT_GT(ctx.d - ctx.epsilon, ctx.C);
  EXPECT_THROW(make_context({200, 0}, 0.5L, {0, 0}, 100), Error);
  EXPECT_THROW(make_context({3000, 0}, 1, {0, 0}, 100), Error);
  EXPECT_THROW(make_context({3000, 0}, 0, {0, 0}, 100), Error);
}

TEST(Context, BuiltFromLocatorOutputs) {
  const LocatorConfig cfg;
  for (const char* name : {"fullplane.json", "halfplane.json", "strip.json", "disk_minus_disk.json"}) {
    const PlanarSet s = load_scene(name);
    const DensityPoint dp = find_density_point(s, cfg);
    for (SearchMode mode : {SearchMode::Triangle, SearchMode::Trapezoid}) {
      const Point O = find_far_point(s, dp.A, dp.epsilon, cfg, mode);
      const SearchContext ctx = make_context(dp.A, dp.epsilon, O, cfg.C);
      EXPECT_GT(ctx.d, ctx.C / ctx.epsilon + ctx.epsilon) << name;
      EXPECT_GT(distance(ctx.O, ctx.A) - ctx.epsilon, ctx.C) << name;
      EXPECT_TRUE(s.contains(O)) << name;
    }
  }
}

TEST(ChooseR, Examples) {
  const LocatorConfig cfg;
  const PlanarSet plane = load_scene("fullplane.json");
  EXPECT_EQ(choose_R(plane, make_context({500, 0}, 0.5L, {0, 0}, 100), cfg), 128);

  const PlanarSet big(Scene{{Disk{{0, 0}, 1e6L}}, {}});
  EXPECT_EQ(choose_R(big, make_context({500, 0}, 0.5L, {0, 0}, 100), cfg), 128);

  // Scaling is about O: with O far from the origin, B / R lands near O.
  const PlanarSet ring(Scene{{Disk{{0, 0}, 1e6L}}, {Disk{{1000, 0}, 1}}});
  EXPECT_EQ(choose_R(ring, make_context({500, 0}, 0.5L, {1000, 500}, 100), cfg), 128);

  const PlanarSet ce = load_scene("counterexample.json");
  EXPECT_EQ(failure_of([&] { choose_R(ce, make_context({5000, 0}, 0.5L, {0, 0}, 100), cfg); }),
            FailureKind::NoAdmissibleR);
}

TEST(ChooseR, SkipsScheduleEntriesThatFail) {
  // A hole at (2, 0) of radius 1 swallows B / R for the first two entries.
  const PlanarSet s(Scene{{Disk{{0, 0}, 1e6L}}, {Disk{{2, 0}, 1}}});
  LocatorConfig cfg;
  cfg.R_schedule = {128, 200, 400, 1000};
  // B = disk((300, 0), 0.5); B/R centres: 2.34, 1.5, 0.75, 0.3.
  EXPECT_EQ(choose_R(s, make_context({300, 0}, 0.5L, {0, 0}, 100), cfg), 400);
}

TEST(Locator, Deterministic) {
  const PlanarSet s = load_scene("strip.json");
  const LocatorConfig cfg;
  const DensityPoint a = find_density_point(s, cfg), b = find_density_point(s, cfg);
  EXPECT_EQ(a.A, b.A);
  EXPECT_EQ(a.epsilon, b.epsilon);
  EXPECT_EQ(find_far_point(s, a.A, a.epsilon, cfg), find_far_point(s, b.A, b.epsilon, cfg));
  EXPECT_EQ(candidate_points(s, cfg), candidate_points(s, cfg));
}

TEST(Locator, CandidatesRespectCapAndOrder) {
  LocatorConfig cfg;
  const PlanarSet s = load_scene("fullplane.json");
  const std::vector<Point> c = candidate_points(s, cfg);
  EXPECT_LE(c.size(), cfg.max_candidates + 1);
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end(), lex_less));
  EXPECT_TRUE(std::adjacent_find(c.begin(), c.end()) == c.end());
}

}  // namespace
}  // namespace twistfind
