#pragma once

#include "fieldmap/config.hpp"
#include "fieldmap/fusion.hpp"
#include "fieldmap/grid.hpp"
#include "fieldmap/polygon.hpp"
#include "fieldmap/watershed.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fieldmap {

/// Wall-clock duration of each pipeline stage, in order of execution.
using StageTimings = std::vector<std::pair<std::string, double>>; // (stage, milliseconds)

struct DelineateResult {
    LabelRaster labels;
    std::vector<FieldPolygon> polygons;
    StageTimings timings;
};

struct PipelineResult {
    LabelRaster labels;
    std::vector<FieldPolygon> polygons; // carries is_wheat / wheat_fraction
    FusionReport fusion;
    BinaryMask wheat_fields; // pixels of labels fused as wheat
    StageTimings timings;
};

/// Field delineation chain: gradual threshold both score maps, build the
/// basins mask, extract seeds, priority-flood watershed over the thresholded
/// field mask, drop small parcels, polygonize, simplify.
DelineateResult delineate_scene(const ProbabilityRaster& field_scores,
                                const ProbabilityRaster& boundary_scores,
                                const PipelineConfig& cfg);

/// Delineation plus wheat fusion. The wheat mask comes from hard-thresholding
/// wheat_scores at 0.5; pass a 0/1 raster to supply a pre-binarized mask.
PipelineResult pipeline_scene(const ProbabilityRaster& field_scores,
                              const ProbabilityRaster& boundary_scores,
                              const ProbabilityRaster& wheat_scores,
                              const PipelineConfig& cfg);

} // namespace fieldmap
