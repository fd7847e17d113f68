#include "mosaic/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mosaic {

namespace {

constexpr double kPi = std::numbers::pi;

void compute_moments(const std::vector<double>& v, double& mu, double& sigma) {
  double sum = 0.0;
  for (double d : v) sum += d;
  mu = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double d : v) ss += (d - mu) * (d - mu);
  sigma = std::sqrt(ss / static_cast<double>(v.size()));  // population sd
}

/// Area of the intersection of a disk with the domain rectangle.
double clipped_disk_area(const Vec2& c, double r, const Domain& dom) {
  if (dom.topology == Topology::Toroidal) return std::min(kPi * r * r, dom.area());
  // midpoint rule over x; chord length clamped to [0, height]
  const double x0 = std::max(0.0, c.x - r);
  const double x1 = std::min(dom.width, c.x + r);
  if (x1 <= x0) return 0.0;
  const int slices = 8192;
  const double dx = (x1 - x0) / slices;
  double area = 0.0;
  for (int i = 0; i < slices; ++i) {
    const double x = x0 + (i + 0.5) * dx;
    const double h2 = r * r - (x - c.x) * (x - c.x);
    if (h2 <= 0.0) continue;
    const double h = std::sqrt(h2);
    const double lo = std::max(0.0, c.y - h);
    const double hi = std::min(dom.height, c.y + h);
    if (hi > lo) area += (hi - lo) * dx;
  }
  return area;
}

}  // namespace

NnStats nn_stats(const PointSet2D& ps) {
  if (ps.size() < 10) throw InsufficientPointsError("nn_stats: need >= 10 points");
  NnStats out;
  out.distances = nearest_neighbor_distances(ps);
  compute_moments(out.distances, out.mu, out.sigma);
  if (!(out.sigma > 1e-12 * out.mu))
    throw DegenerateDistributionError("nn_stats: all NN distances identical, sigma is zero");
  out.ri = out.mu / out.sigma;

  const auto [mn_it, mx_it] = std::minmax_element(out.distances.begin(), out.distances.end());
  const double mn = *mn_it, mx = *mx_it;
  const auto nbins = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(out.distances.size()))));
  const double width = (mx - mn) / static_cast<double>(nbins);
  out.histogram.edges.resize(nbins + 1);
  for (std::size_t b = 0; b <= nbins; ++b)
    out.histogram.edges[b] = mn + width * static_cast<double>(b);
  out.histogram.counts.assign(nbins, 0);
  for (double d : out.distances) {
    auto b = static_cast<std::size_t>((d - mn) / width);
    if (b >= nbins) b = nbins - 1;
    ++out.histogram.counts[b];
  }
  return out;
}

double local_density(const PointSet2D& ps, const Vec2& center, double radius) {
  if (!(radius > 0.0)) throw ArgumentError("local_density: radius must be positive");
  std::size_t count = 0;
  for (const auto& p : ps.points())
    if (distance(p, center, ps.domain()) <= radius) ++count;
  if (count == 0) return 0.0;
  return static_cast<double>(count) / clipped_disk_area(center, radius, ps.domain());
}

PcfCurve pcf(const PointSet2D& ps, const PcfParams& params) {
  if (ps.size() < 10) throw InsufficientPointsError("pcf: need >= 10 points");
  if (!(params.r_min < params.r_max) || params.bins < 16 || !(params.sigma_smooth > 0.0))
    throw ArgumentError("pcf: invalid parameters");

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
  for (int b = 0; b < bins; ++b) {
    curve.radii[b] = params.r_min + (b + 0.5) * dr;
    curve.unreliable[b] = curve.radii[b] < 1.5 * sigma ? 1 : 0;
  }

  // Kernel support is effectively 5 sigma; pairs beyond the last bin
  // plus the support cannot contribute.
  const double reach = 5.0 * sigma;
  const double cutoff = (params.r_max + reach) * d_hex;
  NeighborIndex index(ps);

  std::vector<std::vector<double>> partial;
#ifdef _OPENMP
  const int nthreads = omp_get_max_threads();
#else
  const int nthreads = 1;
#endif
  partial.assign(nthreads, std::vector<double>(bins, 0.0));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32)
#endif
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
#ifdef _OPENMP
    auto& acc = partial[omp_get_thread_num()];
#else
    auto& acc = partial[0];
#endif
    index.for_neighbors_of(static_cast<std::size_t>(ii), cutoff, [&](std::size_t, double dist) {
      const double t = dist / d_hex;  // normalized separation
      const int b0 = std::max(0, static_cast<int>((t - reach - params.r_min) / dr));
      const int b1 = std::min(bins - 1, static_cast<int>((t + reach - params.r_min) / dr));
      for (int b = b0; b <= b1; ++b) {
        const double u = (curve.radii[b] - t) / sigma;
        acc[b] += std::exp(-u * u);
      }
    });
  }

  curve.values.assign(bins, 0.0);
  for (const auto& acc : partial)
    for (int b = 0; b < bins; ++b) curve.values[b] += acc[b];

  const double kernel_norm = 1.0 / (sigma * std::sqrt(kPi));
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  double scale = kernel_norm / nn;
  if (params.mode == PcfMode::Calibrated) scale /= 2.0 * kPi * d_hex * d_hex;
  for (int b = 0; b < bins; ++b) curve.values[b] *= scale / curve.radii[b];
  return curve;
}

double pcf_distance(const PcfCurve& a, const PcfCurve& b) {
  const auto& pa = a.params;
  const auto& pb = b.params;
  if (pa.r_min != pb.r_min || pa.r_max != pb.r_max || pa.bins != pb.bins ||
      pa.sigma_smooth != pb.sigma_smooth || pa.mode != pb.mode || a.radii != b.radii)
    throw IncompatibleCurvesError("pcf_distance: curves use different grids or parameters");
  double linf = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (a.unreliable[i] && b.unreliable[i]) continue;  // mutually flagged bins are excluded
    linf = std::max(linf, std::abs(a.values[i] - b.values[i]));
  }
  return linf;
}

std::vector<double> periodogram_lattice(const std::vector<Vec2>& pts, int max_freq) {
  if (max_freq < 2) throw ArgumentError("periodogram: max_freq must be >= 2");
  const int side = 2 * max_freq + 1;
  const auto n = static_cast<long long>(pts.size());

  // separable phase tables: ex[f][j] = exp(-2 pi i f x_j), f = 0..F
  const int f_count = max_freq + 1;
  std::vector<std::complex<double>> ex(static_cast<std::size_t>(f_count) * n);
  std::vector<std::complex<double>> ey(static_cast<std::size_t>(f_count) * n);
  for (long long j = 0; j < n; ++j) {
    const std::complex<double> wx = std::polar(1.0, -2.0 * kPi * pts[j].x);
    const std::complex<double> wy = std::polar(1.0, -2.0 * kPi * pts[j].y);
    std::complex<double> ax{1.0, 0.0}, ay{1.0, 0.0};
    for (int f = 0; f < f_count; ++f) {
      ex[static_cast<std::size_t>(f) * n + j] = ax;
      ey[static_cast<std::size_t>(f) * n + j] = ay;
      ax *= wx;
      ay *= wy;
    }
  }

  std::vector<double> power(static_cast<std::size_t>(side) * side, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (int fy = -max_freq; fy <= max_freq; ++fy) {
    const std::complex<double>* row_y = &ey[static_cast<std::size_t>(std::abs(fy)) * n];
    const bool cy = fy < 0;
    for (int fx = -max_freq; fx <= max_freq; ++fx) {
      if (fx == 0 && fy == 0) continue;
      const std::complex<double>* row_x = &ex[static_cast<std::size_t>(std::abs(fx)) * n];
      const bool cx = fx < 0;
      double re = 0.0, im = 0.0;
      for (long long j = 0; j < n; ++j) {
        const std::complex<double> vx = cx ? std::conj(row_x[j]) : row_x[j];
        const std::complex<double> vy = cy ? std::conj(row_y[j]) : row_y[j];
        const std::complex<double> v = vx * vy;
        re += v.real();
        im += v.imag();
      }
      power[static_cast<std::size_t>(fy + max_freq) * side + (fx + max_freq)] =
          (re * re + im * im) / static_cast<double>(n);
    }
  }
  return power;
}

RadialSpectrum radial_spectrum(const PointSet2D& ps, int max_freq) {
  if (max_freq < 2) throw ArgumentError("radial_spectrum: max_freq must be >= 2");
  if (ps.size() < 2) throw InsufficientPointsError("radial_spectrum: need >= 2 points");

  const auto power = periodogram_lattice(ps.points(), max_freq);
  const int side = 2 * max_freq + 1;
  std::vector<double> sum(max_freq, 0.0);
  std::vector<std::size_t> count(max_freq, 0);
  for (int fy = -max_freq; fy <= max_freq; ++fy) {
    for (int fx = -max_freq; fx <= max_freq; ++fx) {
      if (fx == 0 && fy == 0) continue;
      const double norm = std::sqrt(static_cast<double>(fx) * fx + static_cast<double>(fy) * fy);
      const auto annulus = static_cast<std::size_t>(norm) - 1;  // |f| in [k+1, k+2)
      if (norm < 1.0 || annulus >= static_cast<std::size_t>(max_freq)) continue;
      sum[annulus] += power[static_cast<std::size_t>(fy + max_freq) * side + (fx + max_freq)];
      ++count[annulus];
    }
  }
  RadialSpectrum out;
  for (int k = 0; k < max_freq; ++k) {
    if (count[k] == 0) continue;
    out.freqs.push_back(static_cast<double>(k) + 1.5);  // annulus [k+1, k+2) center
    out.power.push_back(sum[k] / static_cast<double>(count[k]));
  }
  return out;
}

std::vector<ReportRow> regularity_report(const std::vector<const PointSet2D*>& sets) {
  std::vector<ReportRow> ok_rows, failed;
  for (const PointSet2D* ps : sets) {
    ReportRow row;
    row.label = ps->label();
    try {
      const NnStats stats = nn_stats(*ps);
      row.ok = true;
      row.mu = stats.mu;
      row.sigma = stats.sigma;
      row.ri = stats.ri;
      ok_rows.push_back(row);
    } catch (const Error& e) {
      row.error = e.what();
      failed.push_back(row);
    }
  }
  std::stable_sort(ok_rows.begin(), ok_rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.ri < b.ri; });
  ok_rows.insert(ok_rows.end(), failed.begin(), failed.end());
  return ok_rows;
}

}  // namespace mosaic
