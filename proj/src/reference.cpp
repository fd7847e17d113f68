#include "mosaic/reference.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace mosaic::reference {

std::vector<double> nearest_neighbor_distances(const PointSet2D& ps) {
  if (ps.size() < 2)
    throw InsufficientPointsError("reference nn: need >= 2 points");
  const auto& pts = ps.points();
  const std::size_t n = pts.size();
  std::vector<double> out(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) out[i] = std::min(out[i], distance(pts[i], pts[j], ps.domain()));
  return out;
}

double min_pairwise_distance(const PointSet2D& ps) {
  const auto& pts = ps.points();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::min(best, distance(pts[i], pts[j], ps.domain()));
  return best;
}

PcfCurve pcf(const PointSet2D& ps, const PcfParams& params) {
  if (ps.size() < 10) throw InsufficientPointsError("reference pcf: need >= 10 points");
  const std::size_t n = ps.size();
  const double d_hex = max_min_distance(n);
  const double sigma = params.sigma_smooth;
  const int bins = params.bins;
  const double dr = (params.r_max - params.r_min) / bins;

  PcfCurve curve;
  curve.params = params;
  curve.n = n;
  curve.radii.resize(bins);
  curve.unreliable.resize(bins);
  curve.values.assign(bins, 0.0);
  for (int b = 0; b < bins; ++b) {
    curve.radii[b] = params.r_min + (b + 0.5) * dr;
    curve.unreliable[b] = curve.radii[b] < 1.5 * sigma ? 1 : 0;
  }

  const auto& pts = ps.points();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double t = distance(pts[i], pts[j], ps.domain()) / d_hex;
      for (int b = 0; b < bins; ++b) {
        const double u = (curve.radii[b] - t) / sigma;
        curve.values[b] += std::exp(-u * u);
      }
    }
  }

  const double kernel_norm = 1.0 / (sigma * std::sqrt(std::numbers::pi));
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  double scale = kernel_norm / nn;
  if (params.mode == PcfMode::Calibrated) scale /= 2.0 * std::numbers::pi * d_hex * d_hex;
  for (int b = 0; b < bins; ++b) curve.values[b] *= scale / curve.radii[b];
  return curve;
}

RadialSpectrum radial_spectrum(const PointSet2D& ps, int max_freq) {
  if (max_freq < 2) throw ArgumentError("reference spectrum: max_freq must be >= 2");
  const auto& pts = ps.points();
  const auto n = static_cast<double>(pts.size());

  std::vector<double> sum(max_freq, 0.0);
  std::vector<std::size_t> count(max_freq, 0);
  for (int fy = -max_freq; fy <= max_freq; ++fy) {
    for (int fx = -max_freq; fx <= max_freq; ++fx) {
      if (fx == 0 && fy == 0) continue;
      double re = 0.0, im = 0.0;
      for (const auto& p : pts) {
        const double phase = -2.0 * std::numbers::pi * (fx * p.x + fy * p.y);
        re += std::cos(phase);
        im += std::sin(phase);
      }
      const double power = (re * re + im * im) / n;
      const double norm = std::sqrt(static_cast<double>(fx) * fx + static_cast<double>(fy) * fy);
      if (norm < 1.0) continue;
      const auto annulus = static_cast<std::size_t>(norm) - 1;
      if (annulus >= static_cast<std::size_t>(max_freq)) continue;
      sum[annulus] += power;
      ++count[annulus];
    }
  }
  RadialSpectrum out;
  for (int k = 0; k < max_freq; ++k) {
    if (count[k] == 0) continue;
    out.freqs.push_back(static_cast<double>(k) + 1.5);
    out.power.push_back(sum[k] / static_cast<double>(count[k]));
  }
  return out;
}

}  // namespace mosaic::reference
