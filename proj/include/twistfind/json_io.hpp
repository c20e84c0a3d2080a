#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "twistfind/locator.hpp"
#include "twistfind/planar_set.hpp"
#include "twistfind/search.hpp"

namespace twistfind {

/// JSON with long double numbers, so coordinates survive a round trip at
/// full working precision.
using Json = nlohmann::basic_json<std::map, std::vector, std::string, bool, std::int64_t, std::uint64_t, Real>;

/// Deterministic pretty printer (2-space indent, sorted keys). Numbers use
/// the shortest decimal form that reads back to the same long double.
std::string dump_json(const Json& j);

/// Throws InvalidInput with `what` and the parser's message.
Json parse_json(std::string_view text, std::string_view what);

std::string read_file(const std::filesystem::path& path);

/// Writes via a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

// Scenes. See docs/formats.md.
Json scene_to_json(const Scene& scene, const std::optional<Rect>& window);
PlanarSet scene_from_json(const Json& j);

// Masks: plain PGM (P2, maxval 1) or PBM (P1), plus a "<file>.json" sidecar
// holding {"origin": [x, y], "cell": h}. The first PGM row is the top row.
std::string mask_to_pgm(const RasterMask& mask);
Json mask_sidecar(const RasterMask& mask);
RasterMask mask_from_pgm(std::string_view text, const Json& sidecar);
std::filesystem::path sidecar_path(const std::filesystem::path& mask_path);
void write_mask(const RasterMask& mask, const std::filesystem::path& path);

/// Loads a scene (.json) or a mask (.pgm / .pbm with sidecar).
PlanarSet load_set(const std::filesystem::path& path);

/// Canonical text describing the set, for fingerprints.
std::string describe(const PlanarSet& s);

Json tolerance_to_json(const Tolerance& tol);
Tolerance tolerance_from_json(const Json& j, std::string_view where);

Json locator_to_json(const LocatorConfig& cfg);
/// Overlays the fields present in `j` onto `base`; unknown keys are errors.
LocatorConfig locator_from_json(const Json& j, LocatorConfig base = {});

Json certificate_to_json(const ShapeCertificate& cert);
ShapeCertificate certificate_from_json(const Json& j);

Json failure_to_json(const SearchFailure& failure);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace twistfind
