#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "mosaic/analysis.hpp"
#include "mosaic/geometry.hpp"

namespace mosaic::io {

/// Shared point-set text format: a '#'-prefixed first line carrying
/// JSON metadata, then one "x y" pair per line.

struct LoadedPointSet {
  PointSet2D points;
  nlohmann::json meta;
};

/// Coordinates exactly as written, with header metadata and the line
/// number of each point (for error reporting downstream).
struct RawPointFile {
  std::vector<Vec2> coords;
  std::vector<long> lines;
  nlohmann::json meta;
};

RawPointFile parse_point_file(const std::filesystem::path& path);

/// Writes with full double precision so re-reading round-trips exactly.
void write_point_set(const std::filesystem::path& path, const PointSet2D& ps,
                     const nlohmann::json& extra_meta = nlohmann::json::object());

/// Raw parse: coordinates as written plus the header metadata. Domain
/// from header "domain" or "window" if present, else the tight
/// bounding box. Malformed lines and duplicates raise errors carrying
/// line numbers.
LoadedPointSet read_point_set(const std::filesystem::path& path);

void write_curve(const std::filesystem::path& path, const PcfCurve& curve,
                 const std::string& label);
void write_spectrum(const std::filesystem::path& path, const RadialSpectrum& spectrum,
                    const std::string& label, std::size_t n);

/// FNV-1a 64-bit content hash, used in run manifests.
std::uint64_t hash_file(const std::filesystem::path& path);

}  // namespace mosaic::io
