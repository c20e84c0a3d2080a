#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twistfind/json_io.hpp"
#include "twistfind/locator.hpp"
#include "twistfind/search.hpp"
#include "twistfind/svg.hpp"

namespace twistfind::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kHypothesisNotMet = 2,
  kCertificateRejected = 3,
};

enum class Command { Find, Verify, Rasterize, Plot };

struct RasterOptions {
  Real h = 0.1L;
  std::optional<Rect> window;
  std::size_t cap = kDefaultRasterCap;
};

struct RunConfig {
  Command command = Command::Find;
  ShapeKind shape = ShapeKind::IsoscelesTriangle;
  Real area = 1;
  std::filesystem::path input;
  std::filesystem::path output;       // empty: standard output
  std::filesystem::path certificate;  // verify and plot
  LocatorConfig locator;
  RasterOptions raster;
  Tolerance tolerance;
  std::uint64_t seed = 0;
  PlotSpec plot;

  void validate() const;
};

/// Overlays a config document onto `base`. Unknown keys are errors.
RunConfig config_from_json(const Json& j, RunConfig base = {});

/// Hash of everything that determines a find run's output.
std::string config_fingerprint(const RunConfig& cfg, const PlanarSet& s);

int run_find(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_rasterize(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_plot(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line, args[0] being the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistfind::cli
