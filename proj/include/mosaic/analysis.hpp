#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mosaic/geometry.hpp"

namespace mosaic {

struct Histogram {
  std::vector<double> edges;   // bin count + 1 edges
  std::vector<std::size_t> counts;
};

/// Nearest-neighbor statistics: mean, population standard deviation and
/// their ratio (the regularity index).
struct NnStats {
  std::vector<double> distances;
  double mu{0.0};
  double sigma{0.0};
  double ri{0.0};
  Histogram histogram;
};

NnStats nn_stats(const PointSet2D& ps);

/// Points within `radius` of `center` divided by the disk area (area
/// clipped to the domain under Bounded topology).
double local_density(const PointSet2D& ps, const Vec2& center, double radius);

enum class PcfMode { PaperRaw, Calibrated };

struct PcfParams {
  double r_min{0.0};
  double r_max{4.0};     // in units of the hexagonal spacing d_hex(n)
  int bins{200};
  double sigma_smooth{0.25};
  PcfMode mode{PcfMode::Calibrated};
};

struct PcfCurve {
  std::vector<double> radii;      // bin centers, units of d_hex(n)
  std::vector<double> values;
  std::vector<char> unreliable;   // bins with r < 1.5*sigma: 1/r blowup + kernel truncation
  PcfParams params;
  std::size_t n{0};
};

/// Smoothed pair correlation estimate over normalized distances
/// d / d_hex(n), Gaussian kernel exp(-t^2/sigma^2)/(sigma sqrt(pi)).
/// Calibrated mode rescales so an ideal Poisson process reads 1.
PcfCurve pcf(const PointSet2D& ps, const PcfParams& params);

/// Maximum absolute difference across bins; curves must share grid and
/// estimation parameters.
double pcf_distance(const PcfCurve& a, const PcfCurve& b);

struct RadialSpectrum {
  std::vector<double> freqs;   // annulus centers, cycles per domain width
  std::vector<double> power;
};

/// Radially averaged periodogram |sum_j exp(-2 pi i f.x_j)|^2 / n over
/// the integer frequency lattice [-max_freq, max_freq]^2 minus the DC
/// term, averaged in unit-width annuli of |f|.
RadialSpectrum radial_spectrum(const PointSet2D& ps, int max_freq);

/// Raw periodogram over the lattice for a bare coordinate list; row
/// f_y, column f_x, both in [-max_freq, max_freq]. Accepts n >= 1.
std::vector<double> periodogram_lattice(const std::vector<Vec2>& pts, int max_freq);

struct ReportRow {
  std::string label;
  bool ok{false};
  double mu{0.0};
  double sigma{0.0};
  double ri{0.0};
  std::string error;
};

/// One row per set, sorted ascending by RI; failed rows keep their
/// error message and are appended after the sorted block.
std::vector<ReportRow> regularity_report(const std::vector<const PointSet2D*>& sets);

}  // namespace mosaic
