#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mosaic/geometry.hpp"
#include "mosaic/reference.hpp"
#include "mosaic/rng.hpp"

using namespace mosaic;

namespace {

std::vector<Vec2> random_points(std::size_t n, Rng& rng) {
  std::vector<Vec2> pts(n);
  for (auto& p : pts) p = {rng.next_double(), rng.next_double()};
  return pts;
}

}  // namespace

TEST_CASE("toroidal distance wraps each axis") {
  const Domain torus = Domain::unit_torus();
  CHECK(distance({0.1, 0.1}, {0.9, 0.9}, torus) ==
        doctest::Approx(0.2828427).epsilon(1e-6));
  CHECK(distance({0.5, 0.5}, {0.5, 0.5}, torus) == 0.0);
}

TEST_CASE("bounded distance is plain euclidean") {
  const Domain box = Domain::bounded(1.0, 1.0, Unit::Normalized);
  CHECK(distance({0.1, 0.1}, {0.9, 0.9}, box) ==
        doctest::Approx(1.1313708).epsilon(1e-6));
}

TEST_CASE("distance rejects points outside the domain") {
  const Domain torus = Domain::unit_torus();
  CHECK_THROWS_AS(distance({1.5, 0.5}, {0.5, 0.5}, torus), DomainViolationError);
}

TEST_CASE("metric axioms hold on random triples, both topologies") {
  Rng rng(42);
  for (Topology topo : {Topology::Toroidal, Topology::Bounded}) {
    Domain dom = Domain::unit_torus();
    dom.topology = topo;
    for (int trial = 0; trial < 500; ++trial) {
      const Vec2 a{rng.next_double(), rng.next_double()};
      const Vec2 b{rng.next_double(), rng.next_double()};
      const Vec2 c{rng.next_double(), rng.next_double()};
      const double ab = distance(a, b, dom);
      const double ba = distance(b, a, dom);
      const double bc = distance(b, c, dom);
      const double ac = distance(a, c, dom);
      CHECK(ab >= 0.0);
      CHECK(ab == ba);
      CHECK(ac <= ab + bc + 1e-12);
      if (a.x == b.x && a.y == b.y) CHECK(ab == 0.0);
    }
  }
}

TEST_CASE("toroidal distance never exceeds half-diagonal") {
  Rng rng(7);
  const Domain torus = Domain::unit_torus();
  const double bound = std::sqrt(0.25 + 0.25);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec2 a{rng.next_double(), rng.next_double()};
    const Vec2 b{rng.next_double(), rng.next_double()};
    CHECK(distance(a, b, torus) <= bound + 1e-12);
  }
}

TEST_CASE("max_min_distance matches the hexagonal formula") {
  CHECK(max_min_distance(1024) == doctest::Approx(0.0335813).epsilon(1e-5));
  CHECK(max_min_distance(2) == doctest::Approx(0.7598357).epsilon(1e-6));
  CHECK_THROWS_AS(max_min_distance(1), ArgumentError);
  for (std::size_t n : {4u, 64u, 1000u})
    CHECK(max_min_distance(4 * n) == doctest::Approx(max_min_distance(n) / 2.0).epsilon(1e-12));
  // strictly decreasing
  for (std::size_t n = 2; n < 50; ++n)
    CHECK(max_min_distance(n + 1) < max_min_distance(n));
}

TEST_CASE("PointSet2D rejects duplicates and out-of-domain points") {
  const Domain torus = Domain::unit_torus();
  CHECK_THROWS_AS(PointSet2D({{0.5, 0.5}, {0.5, 0.5}}, torus), DuplicatePointError);
  CHECK_THROWS_AS(PointSet2D({{0.5, 0.5}, {1.0, 0.2}}, torus), DomainViolationError);
  CHECK_THROWS_AS(PointSet2D({{0.5, 0.5}}, torus), InsufficientPointsError);
}

TEST_CASE("nearest neighbor distances: hand-checked cases") {
  const Domain box = Domain::bounded(1.0, 1.0, Unit::Normalized);
  PointSet2D collinear({{0.0, 0.0}, {0.0, 0.25}, {0.0, 0.6}}, box);
  const auto d = nearest_neighbor_distances(collinear);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == doctest::Approx(0.25));
  CHECK(d[1] == doctest::Approx(0.25));
  CHECK(d[2] == doctest::Approx(0.35));

  PointSet2D pair({{0.05, 0.5}, {0.95, 0.5}}, Domain::unit_torus());
  const auto dp = nearest_neighbor_distances(pair);
  CHECK(dp[0] == doctest::Approx(0.1));
  CHECK(dp[1] == doctest::Approx(0.1));
}

TEST_CASE("accelerated NN equals brute force on random sets") {
  Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const Topology topo = trial % 2 == 0 ? Topology::Toroidal : Topology::Bounded;
    Domain dom = Domain::unit_torus();
    dom.topology = topo;
    PointSet2D ps(random_points(64, rng), dom);
    const auto fast = nearest_neighbor_distances(ps);
    const auto slow = reference::nearest_neighbor_distances(ps);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i)
      CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
  }
}

TEST_CASE("NN multiset is invariant under toroidal translation") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = random_points(128, rng);
    const double sx = rng.next_double();
    const double sy = rng.next_double();
    std::vector<Vec2> shifted;
    shifted.reserve(pts.size());
    for (const auto& p : pts) {
      double x = p.x + sx;
      double y = p.y + sy;
      x -= std::floor(x);
      y -= std::floor(y);
      shifted.push_back({x, y});
    }
    auto a = nearest_neighbor_distances(PointSet2D(pts, Domain::unit_torus()));
    auto b = nearest_neighbor_distances(PointSet2D(shifted, Domain::unit_torus()));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("NeighborIndex nearest agrees with a linear scan for external queries") {
  Rng rng(5);
  const auto pts = random_points(200, rng);
  const Domain torus = Domain::unit_torus();
  NeighborIndex index(pts, torus);
  for (int q = 0; q < 100; ++q) {
    const Vec2 query{rng.next_double(), rng.next_double()};
    double best = 1e9;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = distance(query, pts[i], torus);
      if (d < best) {
        best = d;
        best_i = i;
      }
    }
    const auto [idx, d] = index.nearest(query);
    CHECK(idx == best_i);
    CHECK(d == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("min_pairwise_distance matches brute force") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    PointSet2D ps(random_points(100, rng), Domain::unit_torus());
    NeighborIndex index(ps);
    CHECK(index.min_pairwise_distance() ==
          doctest::Approx(reference::min_pairwise_distance(ps)).epsilon(1e-12));
  }
}
