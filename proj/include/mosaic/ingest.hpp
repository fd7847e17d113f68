#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mosaic/geometry.hpp"

namespace mosaic::ingest {

struct Rect {
  double x0{0.0}, y0{0.0}, x1{0.0}, y1{0.0};
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

/// A digitized mosaic in physical units (micrometers, bounded window).
struct MosaicRecord {
  PointSet2D pointset;
  std::string source_label;
  double scale_factor{1.0};
  std::optional<Rect> crop_rect;  // in micrometers, as applied
};

/// 1 degree of visual angle corresponds to 288 um on the retina.
double degrees_to_micrometers(double deg);

/// Loads a coordinate file, multiplies every coordinate by
/// scale_factor, and adopts the header-declared window (scaled) or the
/// tight bounding box as the domain.
MosaicRecord load_points(const std::filesystem::path& path, double scale_factor,
                         Unit unit = Unit::Micrometers);

/// Keeps points inside rect (half-open: min edges in, max edges out),
/// translates to the rect origin and shrinks the domain to the rect.
MosaicRecord crop(const MosaicRecord& rec, const Rect& rect);

struct NormalizedMosaic {
  PointSet2D pointset;   // Normalized Bounded unit-scale domain
  double scale;          // micrometers per normalized unit
};

/// Maps the longer domain side to [0,1), preserving aspect ratio.
NormalizedMosaic normalize(const MosaicRecord& rec);

}  // namespace mosaic::ingest
