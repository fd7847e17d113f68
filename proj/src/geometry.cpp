#include "mosaic/geometry.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <unordered_set>

namespace mosaic {

double distance(const Vec2& a, const Vec2& b, const Domain& domain) {
  if (!domain.contains(a) || !domain.contains(b))
    throw DomainViolationError("distance: point outside domain");
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  if (domain.topology == Topology::Toroidal) {
    if (dx > 0.5 * domain.width) dx = domain.width - dx;
    if (dy > 0.5 * domain.height) dy = domain.height - dy;
  }
  return std::sqrt(dx * dx + dy * dy);
}

double max_min_distance(std::size_t n) {
  if (n < 2) throw ArgumentError("max_min_distance: n must be >= 2");
  return std::sqrt(2.0 / (std::sqrt(3.0) * static_cast<double>(n)));
}

namespace {

std::uint64_t coord_key(const Vec2& p) {
  std::uint64_t hx, hy;
  std::memcpy(&hx, &p.x, sizeof hx);
  std::memcpy(&hy, &p.y, sizeof hy);
  return hx * 0x9e3779b97f4a7c15ULL ^ hy;
}

}  // namespace

PointSet2D::PointSet2D(std::vector<Vec2> points, Domain domain, std::string label)
    : points_(std::move(points)), domain_(domain), label_(std::move(label)) {
  if (domain_.width <= 0.0 || domain_.height <= 0.0)
    throw ArgumentError("PointSet2D: domain extents must be positive");
  if (points_.size() < 2)
    throw InsufficientPointsError("PointSet2D: at least 2 points required");
  for (auto& p : points_) {  // canonicalize -0.0 so bitwise dedup matches value equality
    if (p.x == 0.0) p.x = 0.0;
    if (p.y == 0.0) p.y = 0.0;
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(points_.size() * 2);
  for (const auto& p : points_) {
    if (!domain_.contains(p))
      throw DomainViolationError("PointSet2D: point outside domain");
    if (!seen.insert(coord_key(p)).second) {
      // hash collision possible; confirm with an exact scan
      for (const auto& q : points_)
        if (&q != &p && q.x == p.x && q.y == p.y)
          throw DuplicatePointError("PointSet2D: duplicate coordinates rejected");
    }
  }
}

NeighborIndex::NeighborIndex(const PointSet2D& ps)
    : points_(ps.points()), domain_(ps.domain()) {
  build();
}

NeighborIndex::NeighborIndex(const std::vector<Vec2>& points, const Domain& domain)
    : points_(points), domain_(domain) {
  build();
}

void NeighborIndex::build() {
  const std::size_t n = points_.size();
  // Cell size near the expected NN spacing keeps occupancy around 1.
  const double target = std::sqrt(domain_.area() / std::max<std::size_t>(n, 1));
  nx_ = std::max(1, static_cast<int>(domain_.width / target));
  ny_ = std::max(1, static_cast<int>(domain_.height / target));
  cell_w_ = domain_.width / nx_;
  cell_h_ = domain_.height / ny_;

  std::vector<int> count(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
  std::vector<int> cell(n);
  for (std::size_t i = 0; i < n; ++i) {
    cell[i] = cell_of(points_[i]);
    ++count[cell[i] + 1];
  }
  for (std::size_t c = 1; c < count.size(); ++c) count[c] += count[c - 1];
  cell_start_ = count;
  order_.resize(n);
  std::vector<int> cursor(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) order_[cursor[cell[i]]++] = static_cast<int>(i);
}

int NeighborIndex::cell_of(const Vec2& p) const {
  int cx = std::min(nx_ - 1, static_cast<int>(p.x / cell_w_));
  int cy = std::min(ny_ - 1, static_cast<int>(p.y / cell_h_));
  return cy * nx_ + cx;
}

std::pair<std::size_t, double> NeighborIndex::nearest(const Vec2& q, std::size_t exclude,
                                                      double cutoff_hint) const {
  const double diag = std::sqrt(domain_.width * domain_.width + domain_.height * domain_.height);
  double cutoff = cutoff_hint > 0.0 ? cutoff_hint : std::max(cell_w_, cell_h_);
  while (true) {
    std::size_t best = npos;
    double best_d = std::numeric_limits<double>::infinity();
    visit_cells_near(q, cutoff, [&](int j) {
      if (static_cast<std::size_t>(j) == exclude) return;
      const double d = distance(q, points_[j], domain_);
      if (d < best_d) {
        best_d = d;
        best = static_cast<std::size_t>(j);
      }
    });
    if (best != npos && best_d <= cutoff) return {best, best_d};
    if (cutoff > diag) {
      if (best == npos) throw Error("NeighborIndex::nearest: empty index");
      return {best, best_d};
    }
    cutoff *= 2.0;
  }
}

double NeighborIndex::min_pairwise_distance() const {
  const std::size_t n = points_.size();
  double global = std::numeric_limits<double>::infinity();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : global)
#endif
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const double d = nearest(points_[i], i).second;
    if (d < global) global = d;
  }
  return global;
}

std::vector<double> nearest_neighbor_distances(const PointSet2D& ps) {
  if (ps.size() < 2)
    throw InsufficientPointsError("nearest_neighbor_distances: need >= 2 points");
  NeighborIndex index(ps);
  const std::size_t n = ps.size();
  std::vector<double> out(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    out[i] = index.nearest(ps.points()[i], i).second;
  }
  return out;
}

}  // namespace mosaic
