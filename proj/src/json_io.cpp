#include "twistfind/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace twistfind {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad_input(std::string_view where, std::string_view why) {
  throw Error(Errc::InvalidInput, std::string(where) + ": " + std::string(why));
}

std::string format_real(Real x) {
  if (!std::isfinite(x)) return "null";
  char buf[64];
  if (x == std::trunc(x) && std::fabs(x) < 1e15L) {
    std::snprintf(buf, sizeof buf, "%.0Lf", x);
    return buf;
  }
  for (int precision = 1; precision <= 21; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*Lg", precision, x);
    if (std::strtold(buf, nullptr) == x) break;
  }
  return buf;
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void dump_to(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::null: out += "null"; return;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
    case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); return;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); return;
    case Json::value_t::number_float: out += format_real(j.get<Real>()); return;
    case Json::value_t::string: out += nlohmann::json(j.get<std::string>()).dump(); return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const Json& item : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += inner;
        dump_to(item, out, indent + 1);
      }
      out += flat ? "]" : "\n" + pad + "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + nlohmann::json(it.key()).dump() + ": ";
        dump_to(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    default: out += "null"; return;
  }
}

// Strict object access: every key must be known, required keys present.
class Fields {
 public:
  Fields(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) bad_input(where_, "expected an object");
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    const std::set<std::string_view> allowed(keys);
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!allowed.count(it.key())) bad_input(where_ + "." + it.key(), "unknown field");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const Json& at(const std::string& key) const {
    if (!j_.contains(key)) bad_input(path(key), "missing required field");
    return j_.at(key);
  }

  std::string path(const std::string& key) const { return where_ + "." + key; }

  Real number(const std::string& key) const { return as_number(at(key), path(key)); }

  Point point(const std::string& key) const { return as_point(at(key), path(key)); }

  std::string string(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_string()) bad_input(path(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<Real> numbers(const std::string& key) const {
    const Json& v = at(key);
    if (!v.is_array()) bad_input(path(key), "expected an array of numbers");
    std::vector<Real> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path(key) + "[" + std::to_string(i) + "]"));
    return out;
  }

  static Real as_number(const Json& v, const std::string& where) {
    if (!v.is_number()) bad_input(where, "expected a number");
    const Real x = v.get<Real>();
    if (!std::isfinite(x)) bad_input(where, "must be finite");
    return x;
  }

  static Point as_point(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) bad_input(where, "expected [x, y]");
    return {as_number(v[0], where + "[0]"), as_number(v[1], where + "[1]")};
  }

 private:
  const Json& j_;
  std::string where_;
};

Json point_json(Point p) { return Json::array({p.x, p.y}); }

Json rect_json(const Rect& r) { return {{"min", point_json(r.min)}, {"max", point_json(r.max)}}; }

Rect rect_from(const Json& j, const std::string& where) {
  Fields f(j, where);
  f.allow_only({"min", "max"});
  Rect r{f.point("min"), f.point("max")};
  if (!(r.width() > 0) || !(r.height() > 0)) bad_input(where, "max must exceed min in both coordinates");
  return r;
}

Json primitive_json(const Primitive& prim) {
  struct Emit {
    Json operator()(const Disk& d) const {
      return {{"type", "disk"}, {"center", point_json(d.center)}, {"radius", d.radius}};
    }
    Json operator()(const Rect& r) const {
      return {{"type", "rect"}, {"min", point_json(r.min)}, {"max", point_json(r.max)}};
    }
    Json operator()(const HalfPlane& h) const {
      return {{"type", "half_plane"}, {"normal", point_json(h.normal)}, {"offset", h.offset}};
    }
    Json operator()(const PointRow& row) const {
      return {{"type", "point_row"},
              {"start", point_json(row.start)},
              {"step", point_json(row.step)},
              {"count", static_cast<std::uint64_t>(row.count)},
              {"dot_radius", row.dot_radius}};
    }
  };
  return std::visit(Emit{}, prim);
}

Primitive primitive_from(const Json& j, const std::string& where) {
  Fields f(j, where);
  const std::string type = f.string("type");
  Primitive prim;
  if (type == "disk") {
    f.allow_only({"type", "center", "radius"});
    prim = Disk{f.point("center"), f.number("radius")};
  } else if (type == "rect") {
    f.allow_only({"type", "min", "max"});
    prim = Rect{f.point("min"), f.point("max")};
  } else if (type == "half_plane") {
    f.allow_only({"type", "normal", "offset"});
    prim = HalfPlane{f.point("normal"), f.number("offset")};
  } else if (type == "point_row") {
    f.allow_only({"type", "start", "step", "count", "dot_radius"});
    const Json& count = f.at("count");
    if (!count.is_number_integer() || count.get<std::int64_t>() < 1) bad_input(f.path("count"), "expected a positive integer");
    prim = PointRow{f.point("start"), f.point("step"), static_cast<std::size_t>(count.get<std::int64_t>()),
                    f.number("dot_radius")};
  } else {
    bad_input(f.path("type"), "unknown primitive type '" + type + "'");
  }
  try {
    validate(prim);
  } catch (const Error& e) {
    bad_input(where, e.what());
  }
  return prim;
}

std::vector<Primitive> primitives_from(const Json& j, const std::string& where) {
  if (!j.is_array()) bad_input(where, "expected an array");
  std::vector<Primitive> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(primitive_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_to(j, out, 0);
  out += "\n";
  return out;
}

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    bad_input(what, std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidInput, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::InvalidInput, path.string() + ": cannot write file");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(Errc::InvalidInput, path.string() + ": write failed");
  }
  fs::rename(tmp, path);
}

Json scene_to_json(const Scene& scene, const std::optional<Rect>& window) {
  Json j;
  j["primitives"] = Json::array();
  for (const Primitive& p : scene.primitives) j["primitives"].push_back(primitive_json(p));
  if (!scene.subtract.empty()) {
    j["subtract"] = Json::array();
    for (const Primitive& p : scene.subtract) j["subtract"].push_back(primitive_json(p));
  }
  if (window) j["window"] = rect_json(*window);
  return j;
}

PlanarSet scene_from_json(const Json& j) {
  Fields f(j, "scene");
  f.allow_only({"primitives", "subtract", "window", "description"});
  Scene scene;
  scene.primitives = primitives_from(f.at("primitives"), "scene.primitives");
  if (f.has("subtract")) scene.subtract = primitives_from(f.at("subtract"), "scene.subtract");
  std::optional<Rect> window;
  if (f.has("window")) window = rect_from(f.at("window"), "scene.window");
  return PlanarSet(std::move(scene), window);
}

std::string mask_to_pgm(const RasterMask& mask) {
  std::string out = "P2\n" + std::to_string(mask.width()) + " " + std::to_string(mask.height()) + "\n1\n";
  for (std::size_t row = 0; row < mask.height(); ++row) {
    const std::size_t j = mask.height() - 1 - row;
    for (std::size_t i = 0; i < mask.width(); ++i) {
      if (i) out += ' ';
      out += mask.at(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

Json mask_sidecar(const RasterMask& mask) { return {{"origin", point_json(mask.origin())}, {"cell", mask.cell()}}; }

namespace {

// Whitespace-separated tokens with '#' comments, as in the netpbm formats.
class PnmTokens {
 public:
  explicit PnmTokens(std::string_view text) : text_(text) {}

  std::string next() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '#') ++pos_;
    if (start == pos_) bad_input("mask", "unexpected end of file");
    return std::string(text_.substr(start, pos_ - start));
  }

  // P1 allows bits without separators.
  char next_bit() {
    skip();
    if (pos_ >= text_.size()) bad_input("mask", "unexpected end of file");
    return text_[pos_++];
  }

  long long integer() {
    const std::string tok = next();
    char* end = nullptr;
    const long long v = std::strtoll(tok.c_str(), &end, 10);
    if (*end != '\0') bad_input("mask", "expected an integer, got '" + tok + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RasterMask mask_from_pgm(std::string_view text, const Json& sidecar) {
  Fields f(sidecar, "mask sidecar");
  f.allow_only({"origin", "cell", "window"});
  PnmTokens tokens(text);
  const std::string magic = tokens.next();
  if (magic != "P1" && magic != "P2") bad_input("mask", "expected a plain PBM (P1) or PGM (P2) header");
  const long long w = tokens.integer();
  const long long h = tokens.integer();
  if (w <= 0 || h <= 0) bad_input("mask", "dimensions must be positive");
  const long long maxval = magic == "P2" ? tokens.integer() : 1;
  if (maxval <= 0) bad_input("mask", "maxval must be positive");
  const Real cell = f.number("cell");
  if (!(cell > 0)) bad_input("mask sidecar.cell", "must be > 0");
  RasterMask mask(f.point("origin"), cell, static_cast<std::size_t>(w), static_cast<std::size_t>(h));
  for (long long row = 0; row < h; ++row) {
    const auto j = static_cast<std::size_t>(h - 1 - row);
    for (long long i = 0; i < w; ++i) {
      bool bit = false;
      if (magic == "P1") {
        const char c = tokens.next_bit();
        if (c != '0' && c != '1') bad_input("mask", "P1 bits must be 0 or 1");
        bit = c == '1';
      } else {
        const long long v = tokens.integer();
        if (v < 0 || v > maxval) bad_input("mask", "sample out of range");
        bit = v != 0;
      }
      mask.set(static_cast<std::size_t>(i), j, bit);
    }
  }
  return mask;
}

fs::path sidecar_path(const fs::path& mask_path) {
  fs::path p = mask_path;
  p += ".json";
  return p;
}

void write_mask(const RasterMask& mask, const fs::path& path) {
  write_file_atomic(path, mask_to_pgm(mask));
  write_file_atomic(sidecar_path(path), dump_json(mask_sidecar(mask)));
}

PlanarSet load_set(const fs::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".pgm" || ext == ".pbm") {
    const Json sidecar = parse_json(read_file(sidecar_path(path)), sidecar_path(path).string());
    RasterMask mask = mask_from_pgm(read_file(path), sidecar);
    std::optional<Rect> window;
    if (sidecar.contains("window")) window = rect_from(sidecar.at("window"), "mask sidecar.window");
    return PlanarSet(std::move(mask), window);
  }
  return scene_from_json(parse_json(read_file(path), path.string()));
}

std::string describe(const PlanarSet& s) {
  if (const Scene* scene = s.scene()) return dump_json(scene_to_json(*scene, s.window()));
  const RasterMask& m = *s.mask();
  Json j = mask_sidecar(m);
  j["width"] = static_cast<std::uint64_t>(m.width());
  j["height"] = static_cast<std::uint64_t>(m.height());
  j["bits"] = fnv1a_hex(std::string_view(reinterpret_cast<const char*>(m.bits().data()), m.bits().size()));
  if (s.window()) j["window"] = rect_json(*s.window());
  return dump_json(j);
}

Json tolerance_to_json(const Tolerance& tol) { return {{"abs_tol", tol.abs_tol}, {"rel_tol", tol.rel_tol}}; }

Tolerance tolerance_from_json(const Json& j, std::string_view where) {
  Fields f(j, std::string(where));
  f.allow_only({"abs_tol", "rel_tol"});
  Tolerance tol;
  if (f.has("abs_tol")) tol.abs_tol = f.number("abs_tol");
  if (f.has("rel_tol")) tol.rel_tol = f.number("rel_tol");
  try {
    tol.validate();
  } catch (const Error& e) {
    bad_input(where, e.what());
  }
  return tol;
}

Json locator_to_json(const LocatorConfig& cfg) {
  return {{"C", cfg.C},
          {"density_threshold", cfg.density_threshold},
          {"epsilon_schedule", cfg.epsilon_schedule},
          {"sample_grid_step", cfg.sample_grid_step},
          {"max_candidates", static_cast<std::uint64_t>(cfg.max_candidates)},
          {"trapezoid_threshold", cfg.trapezoid_threshold},
          {"R_schedule", cfg.R_schedule},
          {"full_density", cfg.full_density},
          {"delta_divisors", cfg.delta_divisors},
          {"density_samples", cfg.density_samples},
          {"scan_samples", cfg.scan_samples}};
}

LocatorConfig locator_from_json(const Json& j, LocatorConfig cfg) {
  Fields f(j, "locator");
  f.allow_only({"C", "density_threshold", "epsilon_schedule", "sample_grid_step", "max_candidates",
                "trapezoid_threshold", "R_schedule", "full_density", "delta_divisors", "density_samples",
                "scan_samples"});
  const auto positive_int = [&](const std::string& key) {
    const Json& v = f.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) bad_input(f.path(key), "expected a positive integer");
    return v.get<std::int64_t>();
  };
  if (f.has("C")) cfg.C = f.number("C");
  if (f.has("density_threshold")) cfg.density_threshold = f.number("density_threshold");
  if (f.has("epsilon_schedule")) cfg.epsilon_schedule = f.numbers("epsilon_schedule");
  if (f.has("sample_grid_step")) cfg.sample_grid_step = f.number("sample_grid_step");
  if (f.has("max_candidates")) cfg.max_candidates = static_cast<std::size_t>(positive_int("max_candidates"));
  if (f.has("trapezoid_threshold")) cfg.trapezoid_threshold = f.number("trapezoid_threshold");
  if (f.has("R_schedule")) cfg.R_schedule = f.numbers("R_schedule");
  if (f.has("full_density")) cfg.full_density = f.number("full_density");
  if (f.has("delta_divisors")) cfg.delta_divisors = f.numbers("delta_divisors");
  if (f.has("density_samples")) cfg.density_samples = static_cast<int>(positive_int("density_samples"));
  if (f.has("scan_samples")) cfg.scan_samples = static_cast<int>(positive_int("scan_samples"));
  cfg.validate();
  return cfg;
}

Json certificate_to_json(const ShapeCertificate& cert) {
  Json vertices = Json::array();
  for (Point p : cert.vertices) vertices.push_back(point_json(p));
  const ContextSummary& c = cert.context;
  Json context = {{"A", point_json(c.A)},
                  {"epsilon", c.epsilon},
                  {"O", point_json(c.O)},
                  {"d", c.d},
                  {"C", c.C},
                  {"R", c.R ? Json(*c.R) : Json(nullptr)},
                  {"frame", {{"translation", point_json(c.frame.translation)}, {"rotation", c.frame.rotation}}}};
  return {{"kind", std::string(to_string(cert.kind))},
          {"vertices", vertices},
          {"target_area", cert.target_area},
          {"measured_area", cert.measured_area},
          {"side_lengths", cert.side_lengths},
          {"tolerance", tolerance_to_json(cert.tolerance)},
          {"context", context},
          {"config_hash", cert.config_hash}};
}

ShapeCertificate certificate_from_json(const Json& j) {
  Fields f(j, "certificate");
  f.allow_only({"kind", "vertices", "target_area", "measured_area", "side_lengths", "tolerance", "context",
                "config_hash"});
  ShapeCertificate cert;
  const std::string kind = f.string("kind");
  const auto parsed = shape_kind_from_string(kind);
  if (!parsed) bad_input(f.path("kind"), "unknown shape kind '" + kind + "'");
  cert.kind = *parsed;
  const Json& vertices = f.at("vertices");
  if (!vertices.is_array()) bad_input(f.path("vertices"), "expected an array of [x, y]");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    cert.vertices.push_back(Fields::as_point(vertices[i], f.path("vertices") + "[" + std::to_string(i) + "]"));
  }
  cert.target_area = f.number("target_area");
  cert.measured_area = f.number("measured_area");
  cert.side_lengths = f.numbers("side_lengths");
  cert.tolerance = tolerance_from_json(f.at("tolerance"), f.path("tolerance"));
  cert.config_hash = f.string("config_hash");

  Fields c(f.at("context"), f.path("context"));
  c.allow_only({"A", "epsilon", "O", "d", "C", "R", "frame"});
  cert.context.A = c.point("A");
  cert.context.epsilon = c.number("epsilon");
  cert.context.O = c.point("O");
  cert.context.d = c.number("d");
  cert.context.C = c.number("C");
  if (c.has("R")) cert.context.R = c.number("R");
  if (c.has("frame")) {
    Fields fr(c.at("frame"), c.path("frame"));
    fr.allow_only({"translation", "rotation"});
    cert.context.frame = {fr.point("translation"), fr.number("rotation")};
  }
  return cert;
}

Json failure_to_json(const SearchFailure& failure) {
  const Diagnostics& d = failure.diagnostics;
  Json diag = {{"cells_scanned", static_cast<std::uint64_t>(d.cells_scanned)},
               {"best_density", d.best_density},
               {"containment_checks", static_cast<std::uint64_t>(d.containment_checks)}};
  if (d.missing_measure) diag["missing_measure"] = *d.missing_measure;
  if (d.contradiction_bound) diag["contradiction_bound"] = *d.contradiction_bound;
  return {{"status", "hypothesis_not_met"},
          {"failure", std::string(to_string(failure.kind))},
          {"message", d.message},
          {"diagnostics", diag}};
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace twistfind
