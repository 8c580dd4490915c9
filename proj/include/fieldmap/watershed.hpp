#pragma once

#include "fieldmap/grid.hpp"

namespace fieldmap {

/// Connected seed regions extracted from a basins raster. Labels run
/// 1..seed_count in raster-scan order of each region's first pixel.
struct SeedSet {
    LabelRaster labels;
    uint32_t seed_count = 0;
};

/// Labels maximal connected true-regions 1..k in raster-scan order of each
/// region's first pixel; false pixels get 0. `connectivity` is 4 or 8.
LabelRaster connected_components(const BinaryMask& mask, int connectivity);

/// Seeds are the connected components of { basins > 0 } (nodata excluded).
SeedSet extract_seeds(const ProbabilityRaster& basins, int connectivity);

/// Marker-based priority-flood watershed. Depth is the negative field score,
/// so the highest-scoring pixels flood first. Flooding stays inside
/// `flood_mask`; every reachable mask pixel gets exactly one seed's label,
/// unreachable mask pixels and non-mask pixels stay 0, and seed pixels always
/// keep their seed label. Ties in depth resolve FIFO by queue insertion
/// order, which makes the output fully deterministic.
LabelRaster watershed(const ProbabilityRaster& field_scores, const SeedSet& seeds,
                      const BinaryMask& flood_mask, int connectivity);

/// Drops every label whose area (pixel count * pixel_area) is strictly below
/// `min_area`; labels with area exactly equal to min_area survive. Survivors
/// are renumbered densely 1..k in ascending order of their original label.
LabelRaster filter_small_labels(const LabelRaster& labels, double min_area);

} // namespace fieldmap
