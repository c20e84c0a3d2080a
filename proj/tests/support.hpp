#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "twistfind/geometry.hpp"
#include "twistfind/json_io.hpp"
#include "twistfind/planar_set.hpp"

namespace twistfind::testing {

inline std::filesystem::path scene_path(const std::string& name) {
  return std::filesystem::path(TWISTFIND_SCENES_DIR) / name;
}

inline PlanarSet load_scene(const std::string& name) { return load_set(scene_path(name)); }

// Seeded generator so property failures reproduce.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  Real uniform(Real lo, Real hi) {
    return lo + (hi - lo) * static_cast<Real>(std::uniform_real_distribution<double>(0.0, 1.0)(rng_));
  }

  /// Log-uniform in [lo, hi].
  Real log_uniform(Real lo, Real hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  Real angle() { return uniform(0, kTwoPi); }

  Point point(Real extent) { return {uniform(-extent, extent), uniform(-extent, extent)}; }

  std::uint64_t bits() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

struct Isometry {
  Real angle = 0;
  Point shift;

  Point operator()(Point p) const { return rotate(p, angle) + shift; }
};

inline Isometry random_isometry(Gen& g, Real extent) { return {g.angle(), g.point(extent)}; }

inline Real rel_diff(Real a, Real b) {
  const Real scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0 ? 0 : std::fabs(a - b) / scale;
}

}  // namespace twistfind::testing
