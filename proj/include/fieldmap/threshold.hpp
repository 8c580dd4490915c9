#pragma once

#include "fieldmap/grid.hpp"

#include <vector>

namespace fieldmap {

/// Gradual thresholding: keeps the score where it is at least `t`, zeroes it
/// below. Nodata pixels stay nodata. Idempotent; identity at t = 0.
ProbabilityRaster gradual_threshold(const ProbabilityRaster& r, double t);

/// Basin construction: out = gradual_fields * (1 - gradual_boundaries),
/// pointwise. Nodata wherever either input is nodata.
ProbabilityRaster basins_mask(const ProbabilityRaster& gradual_fields,
                              const ProbabilityRaster& gradual_boundaries);

/// Per-pixel class assignment baseline. A pixel is true iff `target_class`
/// is strictly maximal; ties go to the lowest class index, so a tie never
/// selects a higher-indexed target. Any nodata operand yields false.
BinaryMask argmax_mask(const std::vector<const ProbabilityRaster*>& class_scores,
                       size_t target_class);

/// Hard threshold: true iff value >= t and the pixel is valid.
BinaryMask binarize(const ProbabilityRaster& r, double t);

} // namespace fieldmap
