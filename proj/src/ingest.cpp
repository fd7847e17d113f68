#include "mosaic/ingest.hpp"

#include <algorithm>
#include <cmath>

#include "mosaic/io.hpp"

namespace mosaic::ingest {

double degrees_to_micrometers(double deg) {
  if (deg < 0.0) throw ArgumentError("degrees_to_micrometers: negative input");
  return deg * 288.0;
}

MosaicRecord load_points(const std::filesystem::path& path, double scale_factor, Unit unit) {
  if (!(scale_factor > 0.0))
    throw ArgumentError("load_points: scale_factor must be positive");

  io::RawPointFile raw = io::parse_point_file(path);
  std::vector<Vec2> pts = std::move(raw.coords);
  for (auto& p : pts) {
    p.x *= scale_factor;
    p.y *= scale_factor;
  }

  Domain domain;
  domain.topology = Topology::Bounded;
  domain.unit = unit;
  if (raw.meta.contains("window") && raw.meta["window"].is_array() &&
      raw.meta["window"].size() == 2) {
    domain.width = raw.meta["window"][0].get<double>() * scale_factor;
    domain.height = raw.meta["window"][1].get<double>() * scale_factor;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (!domain.contains(pts[k]))
        throw DomainViolationError(path.string() + ": point on line " +
                                   std::to_string(raw.lines[k]) +
                                   " outside the declared window");
    }
  } else {
    double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
    for (const auto& p : pts) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
    for (auto& p : pts) {
      p.x -= minx;
      p.y -= miny;
    }
    const double pad = 1e-9 * std::max(1.0, std::max(maxx - minx, maxy - miny));
    domain.width = maxx - minx + pad;
    domain.height = maxy - miny + pad;
  }

  const std::string label = raw.meta.value("label", path.stem().string());
  MosaicRecord rec{PointSet2D(std::move(pts), domain, label), label, scale_factor, std::nullopt};
  return rec;
}

MosaicRecord crop(const MosaicRecord& rec, const Rect& rect) {
  const Domain& dom = rec.pointset.domain();
  if (!(rect.x1 > rect.x0) || !(rect.y1 > rect.y0))
    throw ArgumentError("crop: empty rectangle");
  if (rect.x1 <= 0.0 || rect.y1 <= 0.0 || rect.x0 >= dom.width || rect.y0 >= dom.height)
    throw ArgumentError("crop: rectangle does not intersect the domain");

  std::vector<Vec2> kept;
  for (const auto& p : rec.pointset.points()) {
    if (p.x >= rect.x0 && p.x < rect.x1 && p.y >= rect.y0 && p.y < rect.y1)
      kept.push_back({p.x - rect.x0, p.y - rect.y0});
  }
  if (kept.size() < 10)
    throw InsufficientPointsError("crop: fewer than 10 points remain");

  Domain cropped = dom;
  cropped.width = rect.width();
  cropped.height = rect.height();
  MosaicRecord out{PointSet2D(std::move(kept), cropped, rec.pointset.label()),
                   rec.source_label, rec.scale_factor, rect};
  return out;
}

NormalizedMosaic normalize(const MosaicRecord& rec) {
  const Domain& dom = rec.pointset.domain();
  const double scale = std::max(dom.width, dom.height);
  std::vector<Vec2> pts;
  pts.reserve(rec.pointset.size());
  for (const auto& p : rec.pointset.points()) pts.push_back({p.x / scale, p.y / scale});

  Domain norm;
  norm.width = dom.width / scale;
  norm.height = dom.height / scale;
  norm.topology = Topology::Bounded;
  norm.unit = Unit::Normalized;
  return {PointSet2D(std::move(pts), norm, rec.pointset.label()), scale};
}

}  // namespace mosaic::ingest
