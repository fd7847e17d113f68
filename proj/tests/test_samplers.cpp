#include <doctest.h>

#include <cmath>

#include "mosaic/analysis.hpp"
#include "mosaic/reference.hpp"
#include "mosaic/samplers.hpp"

using namespace mosaic;

namespace {

bool same_points(const PointSet2D& a, const PointSet2D& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.points()[i].x != b.points()[i].x || a.points()[i].y != b.points()[i].y) return false;
  return true;
}

}  // namespace

TEST_CASE("white noise: determinism and containment") {
  const auto a = sample_white(1024, 7);
  const auto b = sample_white(1024, 7);
  CHECK(same_points(a, b));
  CHECK(!same_points(a, sample_white(1024, 8)));
  for (const auto& p : sample_white(4096, 3).points()) {
    CHECK(p.x >= 0.0);
    CHECK(p.x < 1.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y < 1.0);
  }
}

TEST_CASE("jittered: one point per cell") {
  const auto ps = sample_jittered(1024, 11);
  REQUIRE(ps.size() == 1024);
  std::vector<int> cells(1024, 0);
  for (const auto& p : ps.points()) {
    const int cx = static_cast<int>(p.x * 32.0);
    const int cy = static_cast<int>(p.y * 32.0);
    ++cells[cy * 32 + cx];
  }
  for (int c : cells) CHECK(c == 1);
}

TEST_CASE("jittered: n=4 points stay in their quadrants") {
  const auto ps = sample_jittered(4, 5);
  const auto& pts = ps.points();
  CHECK((pts[0].x < 0.5 && pts[0].y < 0.5));
  CHECK((pts[1].x >= 0.5 && pts[1].y < 0.5));
  CHECK((pts[2].x < 0.5 && pts[2].y >= 0.5));
  CHECK((pts[3].x >= 0.5 && pts[3].y >= 0.5));
}

TEST_CASE("jittered: adjacent-cell bound on NN distance") {
  const auto ps = sample_jittered(1024, 23);
  const auto d = nearest_neighbor_distances(ps);
  const double bound = 2.0 * std::sqrt(2.0) / 32.0;
  for (double v : d) CHECK(v <= bound);
}

TEST_CASE("jittered: non-square n rejected unless rounding requested") {
  CHECK_THROWS_AS(sample_jittered(1000, 1), ArgumentError);
  const auto ps = sample_jittered(1000, 1, true);
  CHECK(ps.size() == 1024);
}

TEST_CASE("dart throwing respects the minimum distance") {
  const auto result = sample_dart_throwing(100, 0.05, 1);
  CHECK(!result.saturated);
  CHECK(result.points.size() == 100);
  CHECK(reference::min_pairwise_distance(result.points) >= 0.05);
}

TEST_CASE("dart throwing: feasibility boundary at n=2") {
  const auto result = sample_dart_throwing(2, 0.7, 3);
  CHECK(result.points.size() == 2);
  CHECK_THROWS_AS(sample_dart_throwing(2, 0.8, 3), ArgumentError);  // > d_hex(2)=0.7598
}

TEST_CASE("fast poisson disk: invariant, count and determinism") {
  const auto result = sample_fast_poisson_disk(1500, 0.02, 9);
  CHECK(result.points.size() > 1000);
  CHECK(reference::min_pairwise_distance(result.points) >= 0.02);
  const auto again = sample_fast_poisson_disk(1500, 0.02, 9);
  CHECK(same_points(result.points, again.points));
}

TEST_CASE("fast poisson disk truncates at n when the domain holds more") {
  const auto result = sample_fast_poisson_disk(50, 0.02, 4);
  CHECK(result.points.size() == 50);
  CHECK(!result.saturated);
}

TEST_CASE("blue noise: zero iterations returns the white start") {
  const auto start = sample_white(64, 17);
  const auto out = sample_blue_noise_opt(64, 17, 0);
  CHECK(same_points(start, out));
}

TEST_CASE("blue noise: regularity improves with iterations") {
  int ordered = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const double ri0 = nn_stats(sample_blue_noise_opt(256, seed, 0)).ri;
    const double ri10 = nn_stats(sample_blue_noise_opt(256, seed, 10)).ri;
    const double ri100 = nn_stats(sample_blue_noise_opt(256, seed, 100)).ri;
    if (ri100 > ri10 && ri10 > ri0) ++ordered;
  }
  CHECK(ordered >= 9);
}

TEST_CASE("samplers are deterministic through run_sampler") {
  SamplerConfig config;
  config.kind = SamplerKind::DartThrowing;
  config.n = 64;
  config.seed = 5;
  config.min_dist = 0.05;
  CHECK(same_points(run_sampler(config).points, run_sampler(config).points));
  config.min_dist.reset();
  CHECK_THROWS_AS(run_sampler(config), ArgumentError);
}
