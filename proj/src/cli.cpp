#include "twistfind/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace twistfind::cli {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw Error(Errc::InvalidInput, field + ": " + why);
}

Real number_at(const Json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  return j.get<Real>();
}

Rect rect_from_array(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 4) bad(field, "expected [xmin, ymin, xmax, ymax]");
  Rect r{{number_at(j[0], field), number_at(j[1], field)}, {number_at(j[2], field), number_at(j[3], field)}};
  if (!(r.width() > 0) || !(r.height() > 0)) bad(field, "max must exceed min in both coordinates");
  return r;
}

Rect rect_from_text(const std::string& text, const std::string& field) {
  std::vector<Real> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const Real x = std::strtold(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') bad(field, "expected xmin,ymin,xmax,ymax");
    v.push_back(x);
  }
  if (v.size() != 4) bad(field, "expected xmin,ymin,xmax,ymax");
  Rect r{{v[0], v[1]}, {v[2], v[3]}};
  if (!(r.width() > 0) || !(r.height() > 0)) bad(field, "max must exceed min in both coordinates");
  return r;
}

ShapeKind shape_from(const std::string& name, const std::string& field) {
  if (auto k = shape_kind_from_string(name)) return *k;
  bad(field, "unknown shape '" + name + "' (isosceles, right, trapezoid)");
}

void check_keys(const Json& j, const std::string& where, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) bad(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) bad(where + "." + it.key(), "unknown field");
  }
}

void emit(const std::filesystem::path& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

}  // namespace

void RunConfig::validate() const {
  if (!(area > 0) || !std::isfinite(area)) bad("area", "must be a positive number");
  if (input.empty()) bad("input", "an input file is required");
  if (command == Command::Verify && certificate.empty()) bad("certificate", "verify needs --cert");
  if (command == Command::Rasterize && output.empty()) bad("output", "rasterize needs --out");
  if (!(raster.h > 0)) bad("raster.h", "must be positive");
  locator.validate();
  tolerance.validate();
}

RunConfig config_from_json(const Json& j, RunConfig cfg) {
  check_keys(j, "config",
             {"shape", "area", "input", "output", "certificate", "locator", "raster", "tolerance", "seed", "plot"});
  if (j.contains("shape")) {
    if (!j["shape"].is_string()) bad("config.shape", "expected a string");
    cfg.shape = shape_from(j["shape"].get<std::string>(), "config.shape");
  }
  if (j.contains("area")) cfg.area = number_at(j["area"], "config.area");
  for (const char* key : {"input", "output", "certificate"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_string()) bad(std::string("config.") + key, "expected a path string");
    const std::filesystem::path p = j[key].get<std::string>();
    if (std::string_view(key) == "input") cfg.input = p;
    if (std::string_view(key) == "output") cfg.output = p;
    if (std::string_view(key) == "certificate") cfg.certificate = p;
  }
  if (j.contains("locator")) cfg.locator = locator_from_json(j["locator"], cfg.locator);
  if (j.contains("tolerance")) cfg.tolerance = tolerance_from_json(j["tolerance"], "config.tolerance");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("config.seed", "expected a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("raster")) {
    const Json& r = j["raster"];
    check_keys(r, "config.raster", {"h", "window", "cap"});
    if (r.contains("h")) cfg.raster.h = number_at(r["h"], "config.raster.h");
    if (r.contains("window")) cfg.raster.window = rect_from_array(r["window"], "config.raster.window");
    if (r.contains("cap")) {
      if (!r["cap"].is_number_unsigned()) bad("config.raster.cap", "expected a positive integer");
      cfg.raster.cap = r["cap"].get<std::uint64_t>();
    }
  }
  if (j.contains("plot")) {
    const Json& p = j["plot"];
    check_keys(p, "config.plot", {"viewport", "width_px", "stroke_width", "set_resolution", "layers"});
    if (p.contains("viewport")) cfg.plot.viewport = rect_from_array(p["viewport"], "config.plot.viewport");
    if (p.contains("width_px")) cfg.plot.width_px = number_at(p["width_px"], "config.plot.width_px");
    if (p.contains("stroke_width")) cfg.plot.stroke_width = number_at(p["stroke_width"], "config.plot.stroke_width");
    if (p.contains("set_resolution")) {
      if (!p["set_resolution"].is_number_unsigned()) bad("config.plot.set_resolution", "expected a positive integer");
      cfg.plot.set_resolution = static_cast<int>(p["set_resolution"].get<std::uint64_t>());
    }
    if (p.contains("layers")) {
      const Json& l = p["layers"];
      check_keys(l, "config.plot.layers", {"set", "disks", "vertices", "edges", "axes"});
      const auto flag = [&](const char* key, bool& target) {
        if (!l.contains(key)) return;
        if (!l[key].is_boolean()) bad(std::string("config.plot.layers.") + key, "expected true or false");
        target = l[key].get<bool>();
      };
      flag("set", cfg.plot.layers.set);
      flag("disks", cfg.plot.layers.disks);
      flag("vertices", cfg.plot.layers.vertices);
      flag("edges", cfg.plot.layers.edges);
      flag("axes", cfg.plot.layers.axes);
    }
  }
  return cfg;
}

std::string config_fingerprint(const RunConfig& cfg, const PlanarSet& s) {
  Json j = {{"shape", std::string(to_string(cfg.shape))},
            {"area", cfg.area},
            {"locator", locator_to_json(cfg.locator)},
            {"tolerance", tolerance_to_json(cfg.tolerance)}};
  return fnv1a_hex(dump_json(j) + describe(s));
}

int run_find(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const PlanarSet s = load_set(cfg.input);
    SearchOptions options{cfg.tolerance, config_fingerprint(cfg, s)};
    const SearchOutcome outcome = find_shape(cfg.shape, s, cfg.area, cfg.locator, options);
    if (!outcome.ok()) {
      out << dump_json(failure_to_json(outcome.failure()));
      err << "hypothesis not met: " << to_string(outcome.failure().kind) << "\n";
      return kHypothesisNotMet;
    }
    emit(cfg.output, dump_json(certificate_to_json(outcome.certificate())), out);
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const PlanarSet s = load_set(cfg.input);
    const ShapeCertificate cert =
        certificate_from_json(parse_json(read_file(cfg.certificate), cfg.certificate.string()));
    const VerificationReport report = verify_certificate(cert, s);
    if (report.ok) {
      out << "certificate verified: " << to_string(cert.kind) << "\n";
      return kSuccess;
    }
    out << "certificate rejected:\n";
    for (const std::string& r : report.reasons) out << "  - " << r << "\n";
    return kCertificateRejected;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int run_rasterize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const PlanarSet s = load_set(cfg.input);
    if (!s.scene()) bad("input", "rasterize expects a scene file");
    std::optional<Rect> window = cfg.raster.window ? cfg.raster.window : s.window();
    if (!window) bad("raster.window", "required when the scene has no window");
    const RasterMask mask = rasterize(*s.scene(), *window, cfg.raster.h, cfg.raster.cap);
    write_mask(mask, cfg.output);
    out << mask.width() << " x " << mask.height() << " cells, " << mask.count() << " set, measure "
        << static_cast<double>(mask.measure()) << "\n";
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int run_plot(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const PlanarSet s = load_set(cfg.input);
    std::optional<ShapeCertificate> cert;
    if (!cfg.certificate.empty()) {
      cert = certificate_from_json(parse_json(read_file(cfg.certificate), cfg.certificate.string()));
    }
    emit(cfg.output, render_svg(s, cert ? &*cert : nullptr, cfg.plot), out);
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Find and verify unit-area shapes with vertices in planar sets", "twistfind"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  std::string input, output, cert_path, config_path, shape, window, viewport;
  std::optional<double> area, h, abs_tol, rel_tol;
  std::optional<std::size_t> cap;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("INPUT", input, "Scene (.json) or mask (.pgm/.pbm)")->required();
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", output, "Output file (default: stdout)");
  };
  CLI::App* find = app.add_subcommand("find", "Search for a certified shape");
  common(find);
  find->add_option("--shape", shape, "isosceles | right | trapezoid");
  find->add_option("--area", area, "Target area (default 1)");
  find->add_option("--abs-tol", abs_tol, "Absolute tolerance");
  find->add_option("--rel-tol", rel_tol, "Relative tolerance");

  CLI::App* verify = app.add_subcommand("verify", "Re-check a certificate against a set");
  common(verify);
  verify->add_option("--cert", cert_path, "Certificate JSON")->required();

  CLI::App* raster = app.add_subcommand("rasterize", "Rasterize a scene to a PGM mask");
  common(raster);
  raster->add_option("--h", h, "Cell size");
  raster->add_option("--window", window, "xmin,ymin,xmax,ymax");
  raster->add_option("--cap", cap, "Maximum number of cells");

  CLI::App* plot = app.add_subcommand("plot", "Render the set and a certificate as SVG");
  common(plot);
  plot->add_option("--cert", cert_path, "Certificate JSON");
  plot->add_option("--viewport", viewport, "xmin,ymin,xmax,ymax");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = config_from_json(parse_json(read_file(config_path), config_path), cfg);
    if (find->parsed()) cfg.command = Command::Find;
    if (verify->parsed()) cfg.command = Command::Verify;
    if (raster->parsed()) cfg.command = Command::Rasterize;
    if (plot->parsed()) cfg.command = Command::Plot;
    cfg.input = input;
    if (!output.empty()) cfg.output = output;
    if (!cert_path.empty()) cfg.certificate = cert_path;
    if (!shape.empty()) cfg.shape = shape_from(shape, "--shape");
    if (area) cfg.area = *area;
    if (abs_tol) cfg.tolerance.abs_tol = *abs_tol;
    if (rel_tol) cfg.tolerance.rel_tol = *rel_tol;
    if (h) cfg.raster.h = *h;
    if (cap) cfg.raster.cap = *cap;
    if (!window.empty()) cfg.raster.window = rect_from_text(window, "--window");
    if (!viewport.empty()) cfg.plot.viewport = rect_from_text(viewport, "--viewport");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  switch (cfg.command) {
    case Command::Find: return run_find(cfg, out, err);
    case Command::Verify: return run_verify(cfg, out, err);
    case Command::Rasterize: return run_rasterize(cfg, out, err);
    case Command::Plot: return run_plot(cfg, out, err);
  }
  return kInputError;
}

}  // namespace twistfind::cli
