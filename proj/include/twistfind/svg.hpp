#pragma once

#include <optional>
#include <string>

#include "twistfind/planar_set.hpp"
#include "twistfind/search.hpp"

namespace twistfind {

struct PlotLayers {
  bool set = true;
  bool disks = true;     // B, B' and D
  bool vertices = true;  // labelled points
  bool edges = true;     // shape boundary
  bool axes = true;      // segment from O to A
};

struct PlotSpec {
  /// World rectangle shown. Defaults to the disks of the certificate's
  /// context, or the set's bounds when there is no certificate.
  std::optional<Rect> viewport;
  Real width_px = 800;
  Real stroke_width = 1.5;
  /// Columns of the membership grid drawn for the set layer.
  int set_resolution = 200;
  PlotLayers layers;
};

/// Deterministic SVG. Shape edges are emitted as one <path class="edge">
/// per side. Throws InvalidInput for a degenerate viewport.
std::string render_svg(const PlanarSet& s, const ShapeCertificate* cert, const PlotSpec& spec);

}  // namespace twistfind
