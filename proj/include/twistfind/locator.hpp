#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twistfind/geometry.hpp"
#include "twistfind/planar_set.hpp"

namespace twistfind {

/// Ways a finite window or raster can fail to exhibit the hypotheses the
/// constructions need. None of them is a claim that the shape is absent.
enum class FailureKind { NoDensityPoint, NoFarPoint, NoAdmissibleR, ImageNeverLands, DomainError };

std::string_view to_string(FailureKind kind);

struct Diagnostics {
  std::size_t cells_scanned = 0;
  /// Highest density among completed estimates. Candidates are abandoned
  /// once they provably miss the threshold, so 0 means none came close.
  Real best_density = 0;
  /// Estimate of mu(B \ S) (or mu(B \ S_R)) and the bound mu(B)/8 or
  /// mu(B)/9 that a true miss would have to reach.
  std::optional<Real> missing_measure;
  std::optional<Real> contradiction_bound;
  std::size_t containment_checks = 0;
  std::string message;
};

class HypothesisNotMet : public std::runtime_error {
 public:
  HypothesisNotMet(FailureKind kind, Diagnostics diagnostics)
      : std::runtime_error(std::string(to_string(kind)) + ": " + diagnostics.message),
        kind_(kind),
        diagnostics_(std::move(diagnostics)) {}

  FailureKind kind() const { return kind_; }
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  FailureKind kind_;
  Diagnostics diagnostics_;
};

enum class SearchMode { Triangle, Trapezoid };

struct LocatorConfig {
  Real C = 100;
  Real density_threshold = 9.0L / 10;
  std::vector<Real> epsilon_schedule{0.5L, 0.25L, 0.1L, 0.05L};
  /// Finest spacing of the candidate lattice over the window.
  Real sample_grid_step = 1;
  /// The lattice is coarsened until it has at most this many points.
  std::size_t max_candidates = 2048;
  Real trapezoid_threshold = 8.0L / 9;
  std::vector<Real> R_schedule = default_R_schedule();
  /// Proxy for "density tends to 1" at the far point: density at the
  /// smallest delta = epsilon / max(delta_divisors) must reach this value.
  Real full_density = 0.99L;
  std::vector<Real> delta_divisors{1, 4, 16};
  /// Lattice points per radius for density estimates over scenes.
  int density_samples = kDefaultSamplesPerRadius;
  /// Lattice points per radius of B' when scanning for p.
  int scan_samples = 64;

  /// Powers of two from 128 to 2^20.
  static std::vector<Real> default_R_schedule();

  void validate() const;
};

struct DensityPoint {
  Point A;
  Real epsilon = 0;
  Real density = 0;
};

/// Isometry sending O to the origin and A onto the positive x-axis.
struct Frame {
  Point translation;
  Real rotation = 0;

  Point apply(Point p) const;
  Point inverse(Point q) const;
};

Frame build_frame(Point O, Point A);

struct SearchContext {
  Point A;
  Real epsilon = 0;
  Point O;
  Real d = 0;
  Real C = 0;
  Frame frame;
  Disk B;        // disk(A, epsilon)
  Disk B_prime;  // disk(A, epsilon / 2)
  Disk D;        // disk(O, C)
  std::optional<Real> R;
};

/// Assembles the context and checks d > C/epsilon + epsilon, epsilon in
/// (0, 1) and disjointness of B and D. Throws InvalidConfig otherwise.
SearchContext make_context(Point A, Real epsilon, Point O, Real C);

/// Lattice over the set's bounds plus scene feature points, sorted
/// lexicographically and deduplicated.
std::vector<Point> candidate_points(const PlanarSet& s, const LocatorConfig& cfg);

/// Radius at which the far point's full-density proxy is evaluated.
Real full_density_radius(const PlanarSet& s, Real epsilon, const LocatorConfig& cfg);

/// First epsilon in the schedule at which some candidate A in S has
/// density > threshold; among those the densest, then lexicographically
/// smallest. Throws HypothesisNotMet(NoDensityPoint).
DensityPoint find_density_point(const PlanarSet& s, const LocatorConfig& cfg);

/// Nearest candidate O in S with d(O, A) > C/epsilon + epsilon, preferring
/// full-density points. Trapezoid mode requires full density.
/// Throws HypothesisNotMet(NoFarPoint).
Point find_far_point(const PlanarSet& s, Point A, Real epsilon, const LocatorConfig& cfg,
                     SearchMode mode = SearchMode::Triangle);

/// First R in the schedule with mu(B intersect S_R) / mu(B) above the
/// trapezoid threshold, S_R scaled about O. Throws HypothesisNotMet(NoAdmissibleR).
Real choose_R(const PlanarSet& s, const SearchContext& ctx, const LocatorConfig& cfg);

}  // namespace twistfind
