#pragma once

#include <cstdint>
#include <optional>

#include "mosaic/geometry.hpp"

namespace mosaic {

enum class SamplerKind { WhiteNoise, Jittered, DartThrowing, FastPoissonDisk, BlueNoiseOpt };

struct SamplerConfig {
  SamplerKind kind{SamplerKind::WhiteNoise};
  std::size_t n{0};
  std::uint64_t seed{0};
  std::optional<double> min_dist;      // required for the Poisson-disk kinds
  std::size_t iterations{100};         // relaxation cap for BlueNoiseOpt
  bool round_up_to_square{false};      // jittered: round n up to next perfect square
  std::size_t max_attempts{1000000};   // dart throwing rejection budget
};

struct SampleResult {
  PointSet2D points;
  bool saturated{false};  // fewer points than requested
};

const char* sampler_kind_name(SamplerKind kind);

/// n i.i.d. uniform points on the unit torus.
PointSet2D sample_white(std::size_t n, std::uint64_t seed);

/// One uniform point per cell of a sqrt(n) x sqrt(n) grid.
PointSet2D sample_jittered(std::size_t n, std::uint64_t seed, bool round_up_to_square = false);

/// Classic rejection sampling: uniform candidates accepted only if at
/// least min_dist (toroidal) from every accepted point. Stops at n
/// points or after max_attempts consecutive rejections.
SampleResult sample_dart_throwing(std::size_t n, double min_dist, std::uint64_t seed,
                                  std::size_t max_attempts = 1000000);

/// Bridson active-list Poisson disk on the torus, k = 30 candidates per
/// frontier point. Truncated to n if it overfills, flagged if under.
SampleResult sample_fast_poisson_disk(std::size_t n, double min_dist, std::uint64_t seed);

/// Lloyd-style relaxation on the torus starting from white noise:
/// points move to the centroid of their Voronoi region (evaluated on a
/// dense fixed grid) each iteration, until `iterations` or until the
/// max displacement drops below 1e-5.
PointSet2D sample_blue_noise_opt(std::size_t n, std::uint64_t seed, std::size_t iterations = 100);

SampleResult run_sampler(const SamplerConfig& config);

}  // namespace mosaic
