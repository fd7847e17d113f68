#include "mosaic/samplers.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <unordered_set>

#include "mosaic/rng.hpp"

namespace mosaic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap01(double v) {
  v -= std::floor(v);
  return v < 1.0 ? v : 0.0;
}

std::uint64_t key_of(const Vec2& p) {
  std::uint64_t hx, hy;
  std::memcpy(&hx, &p.x, sizeof hx);
  std::memcpy(&hy, &p.y, sizeof hy);
  return hx * 0x9e3779b97f4a7c15ULL ^ hy;
}

std::string make_label(const char* kind, std::size_t n, std::uint64_t seed) {
  return std::string(kind) + "_" + std::to_string(n) + "_s" + std::to_string(seed);
}

/// Flat occupancy grid over the unit torus with at most one point per
/// cell; cell size <= r/sqrt(2). Used by both Poisson-disk samplers.
class DiskGrid {
 public:
  explicit DiskGrid(double r)
      : r_(r), nx_(std::max(3, static_cast<int>(std::ceil(std::numbers::sqrt2 / r)))),
        cells_(static_cast<std::size_t>(nx_) * nx_, -1) {}

  bool conflicts(const Vec2& c, const std::vector<Vec2>& pts, const Domain& dom) const {
    const int cx = cell_coord(c.x);
    const int cy = cell_coord(c.y);
    for (int dy = -2; dy <= 2; ++dy) {
      for (int dx = -2; dx <= 2; ++dx) {
        const int j = cells_[index(cx + dx, cy + dy)];
        if (j >= 0 && distance(c, pts[j], dom) < r_) return true;
      }
    }
    return false;
  }

  void insert(const Vec2& p, int id) {
    cells_[index(cell_coord(p.x), cell_coord(p.y))] = id;
  }

 private:
  int cell_coord(double v) const {
    return std::min(nx_ - 1, static_cast<int>(v * nx_));
  }
  std::size_t index(int cx, int cy) const {
    cx = ((cx % nx_) + nx_) % nx_;
    cy = ((cy % nx_) + nx_) % nx_;
    return static_cast<std::size_t>(cy) * nx_ + cx;
  }

  double r_;
  int nx_;
  std::vector<int> cells_;
};

/// CSR grid over the unit torus answering nearest-generator queries
/// with squared distances; hot path of the Lloyd assignment step.
class AssignGrid {
 public:
  explicit AssignGrid(const std::vector<Vec2>& pts)
      : pts_(pts), nx_(std::max(2, static_cast<int>(std::sqrt(static_cast<double>(pts.size()))))),
        cell_(1.0 / nx_) {
    const std::size_t cells = static_cast<std::size_t>(nx_) * nx_;
    start_.assign(cells + 1, 0);
    std::vector<int> idx(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      idx[i] = cell_index(pts[i].x, pts[i].y);
      ++start_[idx[i] + 1];
    }
    for (std::size_t c = 1; c <= cells; ++c) start_[c] += start_[c - 1];
    order_.resize(pts.size());
    std::vector<int> cursor(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < pts.size(); ++i) order_[cursor[idx[i]]++] = static_cast<int>(i);
  }

  int nearest(double qx, double qy) const {
    const int qcx = std::min(nx_ - 1, static_cast<int>(qx * nx_));
    const int qcy = std::min(nx_ - 1, static_cast<int>(qy * nx_));
    int best = -1;
    double best_d2 = 1e30;
    for (int radius = 1;; ++radius) {
      const int lo_x = qcx - radius, hi_x = qcx + radius;
      const int lo_y = qcy - radius, hi_y = qcy + radius;
      for (int cy = lo_y; cy <= hi_y; ++cy) {
        for (int cx = lo_x; cx <= hi_x; ++cx) {
          if (radius > 1 && cx > lo_x && cx < hi_x && cy > lo_y && cy < hi_y)
            continue;  // interior already scanned on earlier rings
          const int c = wrap_cell(cx) + wrap_cell(cy) * nx_;
          for (int k = start_[c]; k < start_[c + 1]; ++k) {
            const int j = order_[k];
            double dx = std::abs(qx - pts_[j].x);
            double dy = std::abs(qy - pts_[j].y);
            if (dx > 0.5) dx = 1.0 - dx;
            if (dy > 0.5) dy = 1.0 - dy;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
              best_d2 = d2;
              best = j;
            }
          }
        }
      }
      // unscanned cells sit at Chebyshev offset >= radius+1, hence at
      // least radius * cell away
      const double guard = radius * cell_;
      if (best >= 0 && best_d2 <= guard * guard) return best;
      if (2 * radius + 1 >= nx_ && best >= 0) return best;
    }
  }

 private:
  int cell_index(double x, double y) const {
    return std::min(nx_ - 1, static_cast<int>(x * nx_)) +
           std::min(nx_ - 1, static_cast<int>(y * nx_)) * nx_;
  }
  int wrap_cell(int c) const { return ((c % nx_) + nx_) % nx_; }

  const std::vector<Vec2>& pts_;
  int nx_;
  double cell_;
  std::vector<int> start_;
  std::vector<int> order_;
};

void check_min_dist(std::size_t n, double min_dist) {
  if (n < 2) throw ArgumentError("sampler: n must be >= 2");
  if (!(min_dist > 0.0)) throw ArgumentError("sampler: min_dist must be positive");
  if (min_dist > max_min_distance(n))
    throw ArgumentError("sampler: min_dist exceeds the feasible radius for n points");
}

}  // namespace

const char* sampler_kind_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::WhiteNoise: return "white";
    case SamplerKind::Jittered: return "jittered";
    case SamplerKind::DartThrowing: return "dart";
    case SamplerKind::FastPoissonDisk: return "poisson";
    case SamplerKind::BlueNoiseOpt: return "bluenoise";
  }
  return "unknown";
}

PointSet2D sample_white(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ArgumentError("sample_white: n must be >= 2");
  Rng rng(seed);
  std::vector<Vec2> pts;
  pts.reserve(n);
  std::unordered_set<std::uint64_t> seen;
  while (pts.size() < n) {
    Vec2 p{rng.next_double(), rng.next_double()};
    if (seen.insert(key_of(p)).second) pts.push_back(p);
  }
  return PointSet2D(std::move(pts), Domain::unit_torus(), make_label("white", n, seed));
}

PointSet2D sample_jittered(std::size_t n, std::uint64_t seed, bool round_up_to_square) {
  if (n < 2) throw ArgumentError("sample_jittered: n must be >= 2");
  auto m = static_cast<std::size_t>(std::round(std::sqrt(static_cast<double>(n))));
  if (m * m != n) {
    if (!round_up_to_square)
      throw ArgumentError("sample_jittered: n must be a perfect square");
    m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  }
  Rng rng(seed);
  std::vector<Vec2> pts;
  pts.reserve(m * m);
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t cy = 0; cy < m; ++cy) {
    for (std::size_t cx = 0; cx < m; ++cx) {
      double x = (static_cast<double>(cx) + rng.next_double()) * inv;
      double y = (static_cast<double>(cy) + rng.next_double()) * inv;
      pts.push_back({std::min(x, std::nextafter(1.0, 0.0)), std::min(y, std::nextafter(1.0, 0.0))});
    }
  }
  return PointSet2D(std::move(pts), Domain::unit_torus(), make_label("jittered", m * m, seed));
}

SampleResult sample_dart_throwing(std::size_t n, double min_dist, std::uint64_t seed,
                                  std::size_t max_attempts) {
  check_min_dist(n, min_dist);
  Rng rng(seed);
  const Domain torus = Domain::unit_torus();
  DiskGrid grid(min_dist);
  std::vector<Vec2> pts;
  pts.reserve(n);
  std::size_t rejections = 0;
  while (pts.size() < n && rejections < max_attempts) {
    Vec2 c{rng.next_double(), rng.next_double()};
    if (grid.conflicts(c, pts, torus)) {
      ++rejections;
      continue;
    }
    grid.insert(c, static_cast<int>(pts.size()));
    pts.push_back(c);
    rejections = 0;
  }
  const bool saturated = pts.size() < n;
  if (pts.size() * 2 < n)
    throw GenerationFailureError("sample_dart_throwing: saturated below n/2 points");
  return {PointSet2D(std::move(pts), torus, make_label("dart", n, seed)), saturated};
}

SampleResult sample_fast_poisson_disk(std::size_t n, double min_dist, std::uint64_t seed) {
  check_min_dist(n, min_dist);
  Rng rng(seed);
  const Domain torus = Domain::unit_torus();
  constexpr int kCandidates = 30;
  DiskGrid grid(min_dist);
  std::vector<Vec2> pts;
  std::vector<std::size_t> active;

  Vec2 first{rng.next_double(), rng.next_double()};
  grid.insert(first, 0);
  pts.push_back(first);
  active.push_back(0);

  while (!active.empty() && pts.size() < n) {
    const std::size_t pick = rng.next_below(active.size());
    const Vec2 base = pts[active[pick]];
    bool placed = false;
    for (int k = 0; k < kCandidates && pts.size() < n; ++k) {
      // uniform over the annulus [r, 2r]
      const double rad = min_dist * std::sqrt(1.0 + 3.0 * rng.next_double());
      const double ang = kTwoPi * rng.next_double();
      Vec2 c{wrap01(base.x + rad * std::cos(ang)), wrap01(base.y + rad * std::sin(ang))};
      if (grid.conflicts(c, pts, torus)) continue;
      grid.insert(c, static_cast<int>(pts.size()));
      active.push_back(pts.size());
      pts.push_back(c);
      placed = true;
    }
    if (!placed) {
      active[pick] = active.back();
      active.pop_back();
    }
  }
  const bool saturated = pts.size() < n;
  if (pts.size() * 2 < n)
    throw GenerationFailureError("sample_fast_poisson_disk: saturated below n/2 points");
  return {PointSet2D(std::move(pts), torus, make_label("poisson", n, seed)), saturated};
}

PointSet2D sample_blue_noise_opt(std::size_t n, std::uint64_t seed, std::size_t iterations) {
  if (n < 16) throw ArgumentError("sample_blue_noise_opt: n must be >= 16");
  PointSet2D start = sample_white(n, seed);
  if (iterations == 0) return start;

  std::vector<Vec2> pts = start.points();
  const Domain torus = Domain::unit_torus();
  Rng jitter_rng(seed ^ 0xb10e5eedULL);

  // Fixed evaluation grid: a few hundred density samples per cell keeps
  // the centroid quantization well below the target NN spread.
  const int grid_n =
      std::clamp(static_cast<int>(std::ceil(std::sqrt(700.0 * static_cast<double>(n)))), 128, 2048);
  const double inv_g = 1.0 / grid_n;
  const std::size_t total = static_cast<std::size_t>(grid_n) * grid_n;
  std::vector<int> owner(total);

  std::vector<double> sum_x(n), sum_y(n);
  std::vector<std::int64_t> count(n);

  for (std::size_t iter = 0; iter < iterations; ++iter) {
    // degenerate-cell guard: split near-coincident generators
    {
      NeighborIndex idx(pts, torus);
      for (std::size_t i = 0; i < n; ++i) {
        if (idx.nearest(pts[i], i).second < 1e-9) {
          pts[i].x = wrap01(pts[i].x + 1e-6 * (jitter_rng.next_double() - 0.5));
          pts[i].y = wrap01(pts[i].y + 1e-6 * (jitter_rng.next_double() - 0.5));
        }
      }
    }

    const AssignGrid assign(pts);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long row = 0; row < grid_n; ++row) {
      const double y = (static_cast<double>(row) + 0.5) * inv_g;
      for (int col = 0; col < grid_n; ++col) {
        owner[static_cast<std::size_t>(row) * grid_n + col] =
            assign.nearest((static_cast<double>(col) + 0.5) * inv_g, y);
      }
    }

    // serial accumulation in a fixed order keeps the result independent
    // of the thread count
    std::fill(sum_x.begin(), sum_x.end(), 0.0);
    std::fill(sum_y.begin(), sum_y.end(), 0.0);
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t idx_s = 0; idx_s < total; ++idx_s) {
      const int j = owner[idx_s];
      const double sx = (static_cast<double>(idx_s % grid_n) + 0.5) * inv_g;
      const double sy = (static_cast<double>(idx_s / grid_n) + 0.5) * inv_g;
      double dx = sx - pts[j].x;
      double dy = sy - pts[j].y;
      if (dx > 0.5) dx -= 1.0;
      if (dx < -0.5) dx += 1.0;
      if (dy > 0.5) dy -= 1.0;
      if (dy < -0.5) dy += 1.0;
      sum_x[j] += dx;
      sum_y[j] += dy;
      ++count[j];
    }

    double max_disp = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (count[j] == 0) continue;
      const double dx = sum_x[j] / static_cast<double>(count[j]);
      const double dy = sum_y[j] / static_cast<double>(count[j]);
      pts[j].x = wrap01(pts[j].x + dx);
      pts[j].y = wrap01(pts[j].y + dy);
      max_disp = std::max(max_disp, std::sqrt(dx * dx + dy * dy));
    }
    if (max_disp < 1e-5) break;
  }

  return PointSet2D(std::move(pts), torus, make_label("bluenoise", n, seed));
}

SampleResult run_sampler(const SamplerConfig& config) {
  switch (config.kind) {
    case SamplerKind::WhiteNoise:
      return {sample_white(config.n, config.seed), false};
    case SamplerKind::Jittered:
      return {sample_jittered(config.n, config.seed, config.round_up_to_square), false};
    case SamplerKind::DartThrowing:
      if (!config.min_dist) throw ArgumentError("dart throwing requires min_dist");
      return sample_dart_throwing(config.n, *config.min_dist, config.seed, config.max_attempts);
    case SamplerKind::FastPoissonDisk:
      if (!config.min_dist) throw ArgumentError("fast poisson disk requires min_dist");
      return sample_fast_poisson_disk(config.n, *config.min_dist, config.seed);
    case SamplerKind::BlueNoiseOpt:
      return {sample_blue_noise_opt(config.n, config.seed, config.iterations), false};
  }
  throw ArgumentError("run_sampler: unknown sampler kind");
}

}  // namespace mosaic
