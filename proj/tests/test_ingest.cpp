#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mosaic/analysis.hpp"
#include "mosaic/ingest.hpp"
#include "mosaic/io.hpp"
#include "mosaic/rng.hpp"

using namespace mosaic;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = fs::temp_directory_path() / ("mosaic_ingest_" + std::to_string(counter++) + ".txt");
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

std::string grid_file(int m, double spacing, const std::string& header = {}) {
  std::string s = header;
  for (int y = 0; y < m; ++y)
    for (int x = 0; x < m; ++x)
      s += std::to_string(x * spacing) + " " + std::to_string(y * spacing) + "\n";
  return s;
}

}  // namespace

TEST_CASE("degrees_to_micrometers") {
  CHECK(ingest::degrees_to_micrometers(1.0) == 288.0);
  CHECK(ingest::degrees_to_micrometers(0.0) == 0.0);
  CHECK(ingest::degrees_to_micrometers(0.5) == 144.0);
  CHECK_THROWS_AS(ingest::degrees_to_micrometers(-0.1), ArgumentError);
}

TEST_CASE("load_points applies the scale factor") {
  TempFile f("1.0 2.0\n3.0 4.0\n");
  const auto rec = ingest::load_points(f.path, 2.0);
  REQUIRE(rec.pointset.size() == 2);
  // bounding-box domain shifts min corner to the origin
  CHECK(rec.pointset.points()[0].x == doctest::Approx(0.0));
  CHECK(rec.pointset.points()[1].x == doctest::Approx(4.0));
  CHECK(rec.pointset.points()[1].y == doctest::Approx(4.0));
  CHECK(rec.scale_factor == 2.0);
}

TEST_CASE("load_points: declared window becomes the domain") {
  TempFile f("# {\"label\":\"8-K\",\"window\":[90,90],\"unit\":\"micrometers\"}\n" +
             grid_file(10, 8.5));
  const auto rec = ingest::load_points(f.path, 1.0);
  CHECK(rec.pointset.domain().width == doctest::Approx(90.0));
  CHECK(rec.pointset.domain().height == doctest::Approx(90.0));
  CHECK(rec.pointset.domain().topology == Topology::Bounded);
  CHECK(rec.source_label == "8-K");
  CHECK(rec.pointset.size() == 100);
}

TEST_CASE("load_points: malformed line reports the line number") {
  TempFile f("1.0 2.0\nnot numbers\n3.0 4.0\n");
  try {
    ingest::load_points(f.path, 1.0);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line_number == 2);
  }
}

TEST_CASE("load_points: duplicates name both lines") {
  TempFile f("1.0 2.0\n3.0 4.0\n1.0 2.0\n");
  try {
    ingest::load_points(f.path, 1.0);
    FAIL("expected DuplicatePointError");
  } catch (const DuplicatePointError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("1") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);
  }
}

TEST_CASE("load_points: fewer than 2 points") {
  TempFile f("1.0 2.0\n");
  CHECK_THROWS_AS(ingest::load_points(f.path, 1.0), InsufficientPointsError);
}

TEST_CASE("crop keeps the half-open window") {
  TempFile f("# {\"window\":[10,10]}\n" + grid_file(10, 1.0));
  const auto rec = ingest::load_points(f.path, 1.0);
  const auto half = ingest::crop(rec, {0.0, 0.0, 5.0, 10.0});
  CHECK(half.pointset.size() == 50);
  CHECK(half.pointset.domain().width == doctest::Approx(5.0));
  CHECK(half.pointset.domain().height == doctest::Approx(10.0));

  // crop equal to the full domain keeps every point
  const auto full = ingest::crop(rec, {0.0, 0.0, 10.0, 10.0});
  CHECK(full.pointset.size() == rec.pointset.size());

  CHECK_THROWS_AS(ingest::crop(rec, {9.5, 9.5, 9.9, 9.9}), InsufficientPointsError);
  CHECK_THROWS_AS(ingest::crop(rec, {20.0, 20.0, 30.0, 30.0}), ArgumentError);
}

TEST_CASE("normalize maps the longer side to [0,1) and preserves aspect") {
  TempFile f("# {\"window\":[90,45]}\n" + grid_file(6, 7.0));
  const auto rec = ingest::load_points(f.path, 1.0);
  const auto norm = ingest::normalize(rec);
  CHECK(norm.scale == doctest::Approx(90.0));
  CHECK(norm.pointset.domain().width == doctest::Approx(1.0));
  CHECK(norm.pointset.domain().height == doctest::Approx(0.5));
  for (const auto& p : norm.pointset.points()) {
    CHECK(p.x < 1.0);
    CHECK(p.y < 0.5);
  }
}

TEST_CASE("round trip: normalized NN mean denormalizes to the um value") {
  TempFile f("# {\"window\":[90,90]}\n" + grid_file(12, 7.3));
  const auto rec = ingest::load_points(f.path, 1.0);
  const auto cropped = ingest::crop(rec, {0.0, 0.0, 60.0, 60.0});
  const auto norm = ingest::normalize(cropped);

  // lattice NN stats are degenerate, so compare raw NN means
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double d : v) s += d;
    return s / v.size();
  };
  const double um_direct = mean(nearest_neighbor_distances(cropped.pointset));
  const double um_roundtrip = mean(nearest_neighbor_distances(norm.pointset)) * norm.scale;
  CHECK(um_roundtrip == doctest::Approx(um_direct).epsilon(1e-9));
}

TEST_CASE("RI invariant under the load scale factor") {
  std::string body;
  Rng rng(44);
  for (int i = 0; i < 64; ++i)
    body += std::to_string(rng.next_double() * 80.0) + " " +
            std::to_string(rng.next_double() * 80.0) + "\n";
  TempFile f("# {\"window\":[80,80]}\n" + body);
  const auto a = nn_stats(ingest::load_points(f.path, 1.0).pointset);
  const auto b = nn_stats(ingest::load_points(f.path, 3.5).pointset);
  CHECK(a.ri == doctest::Approx(b.ri).epsilon(1e-9));
}

TEST_CASE("parser fuzz: arbitrary bytes raise errors, never crash") {
  Rng rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    std::string blob;
    const auto len = rng.next_below(400);
    for (std::uint64_t i = 0; i < len; ++i)
      blob.push_back(static_cast<char>(rng.next_below(256)));
    TempFile f(blob);
    try {
      ingest::load_points(f.path, 1.0);
    } catch (const Error&) {
      // any structured toolkit error is acceptable
    }
  }
}
