#pragma once

#include "mosaic/analysis.hpp"
#include "mosaic/geometry.hpp"

namespace mosaic::reference {

/// Serial O(n^2) implementations kept as independent oracles for the
/// accelerated kernels; also exercised by the benchmark target.

std::vector<double> nearest_neighbor_distances(const PointSet2D& ps);

double min_pairwise_distance(const PointSet2D& ps);

/// Direct double sum over all ordered pairs and all bins, no kernel
/// truncation and no spatial pruning.
PcfCurve pcf(const PointSet2D& ps, const PcfParams& params);

/// Direct transcendental evaluation per lattice frequency.
RadialSpectrum radial_spectrum(const PointSet2D& ps, int max_freq);

}  // namespace mosaic::reference
