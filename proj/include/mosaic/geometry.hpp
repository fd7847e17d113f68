#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mosaic/errors.hpp"

namespace mosaic {

struct Vec2 {
  double x{0.0};
  double y{0.0};
};

enum class Topology { Toroidal, Bounded };
enum class Unit { Normalized, Micrometers };

/// Rectangular window [0, width) x [0, height) with a boundary topology.
struct Domain {
  double width{1.0};
  double height{1.0};
  Topology topology{Topology::Toroidal};
  Unit unit{Unit::Normalized};

  static Domain unit_torus() { return Domain{}; }
  static Domain bounded(double w, double h, Unit u = Unit::Micrometers) {
    return Domain{w, h, Topology::Bounded, u};
  }

  bool contains(const Vec2& p) const {
    return p.x >= 0.0 && p.x < width && p.y >= 0.0 && p.y < height;
  }
  double area() const { return width * height; }
};

/// Euclidean distance under the domain's topology. Toroidal wraps each
/// axis difference to at most half the extent.
double distance(const Vec2& a, const Vec2& b, const Domain& domain);

/// Largest achievable minimal pairwise distance for n points in a
/// unit-area torus (hexagonal lattice spacing): sqrt(2 / (sqrt(3) n)).
double max_min_distance(std::size_t n);

/// Immutable ordered point set inside a domain. Construction validates
/// containment and rejects bitwise-duplicate coordinates.
class PointSet2D {
 public:
  PointSet2D(std::vector<Vec2> points, Domain domain, std::string label = {});

  const std::vector<Vec2>& points() const { return points_; }
  const Domain& domain() const { return domain_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return points_.size(); }

  PointSet2D with_label(std::string label) const {
    return PointSet2D(points_, domain_, std::move(label));
  }

 private:
  std::vector<Vec2> points_;
  Domain domain_;
  std::string label_;
};

/// Uniform-grid spatial index. The contract is brute-force equivalence:
/// queries return exactly what an all-pairs scan under the same metric
/// would.
class NeighborIndex {
 public:
  explicit NeighborIndex(const PointSet2D& ps);
  NeighborIndex(const std::vector<Vec2>& points, const Domain& domain);

  /// Index and distance of the nearest stored point to q, excluding
  /// stored point `exclude` (pass npos to consider all). cutoff_hint
  /// seeds the expanding search radius; 0 means one grid cell.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::pair<std::size_t, double> nearest(const Vec2& q, std::size_t exclude = npos,
                                         double cutoff_hint = 0.0) const;

  /// Calls f(j, dist) for every stored point j != i with
  /// dist(p_i, p_j) <= cutoff. Serial; callers parallelize over i.
  template <typename F>
  void for_neighbors_of(std::size_t i, double cutoff, F&& f) const;

  /// Minimum pairwise distance over the whole set.
  double min_pairwise_distance() const;

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Vec2> points_;
  Domain domain_;
  int nx_{1}, ny_{1};
  double cell_w_{1.0}, cell_h_{1.0};
  std::vector<int> cell_start_;   // prefix offsets into order_
  std::vector<int> order_;        // point ids grouped by cell

  int cell_of(const Vec2& p) const;
  void build();

  template <typename F>
  void visit_cells_near(const Vec2& q, double cutoff, F&& f) const;
};

/// Per-point nearest-neighbor distances, output order matching input
/// order. OpenMP-parallel over query points.
std::vector<double> nearest_neighbor_distances(const PointSet2D& ps);

// ---- template definitions ----

template <typename F>
void NeighborIndex::visit_cells_near(const Vec2& q, double cutoff, F&& f) const {
  const bool wrap = domain_.topology == Topology::Toroidal;
  const int rx = static_cast<int>(cutoff / cell_w_) + 1;
  const int ry = static_cast<int>(cutoff / cell_h_) + 1;
  const int qcx = std::min(nx_ - 1, static_cast<int>(q.x / cell_w_));
  const int qcy = std::min(ny_ - 1, static_cast<int>(q.y / cell_h_));

  auto columns = [&](auto&& g) {
    if (2 * rx + 1 >= nx_) {
      for (int cx = 0; cx < nx_; ++cx) g(cx);
    } else {
      for (int d = -rx; d <= rx; ++d) {
        int cx = qcx + d;
        if (wrap) {
          cx = ((cx % nx_) + nx_) % nx_;
        } else if (cx < 0 || cx >= nx_) {
          continue;
        }
        g(cx);
      }
    }
  };
  auto rows = [&](auto&& g) {
    if (2 * ry + 1 >= ny_) {
      for (int cy = 0; cy < ny_; ++cy) g(cy);
    } else {
      for (int d = -ry; d <= ry; ++d) {
        int cy = qcy + d;
        if (wrap) {
          cy = ((cy % ny_) + ny_) % ny_;
        } else if (cy < 0 || cy >= ny_) {
          continue;
        }
        g(cy);
      }
    }
  };

  columns([&](int cx) {
    rows([&](int cy) {
      const int c = cy * nx_ + cx;
      for (int k = cell_start_[c]; k < cell_start_[c + 1]; ++k) f(order_[k]);
    });
  });
}

template <typename F>
void NeighborIndex::for_neighbors_of(std::size_t i, double cutoff, F&& f) const {
  visit_cells_near(points_[i], cutoff, [&](int j) {
    if (static_cast<std::size_t>(j) == i) return;
    const double d = distance(points_[i], points_[j], domain_);
    if (d <= cutoff) f(static_cast<std::size_t>(j), d);
  });
}

}  // namespace mosaic
