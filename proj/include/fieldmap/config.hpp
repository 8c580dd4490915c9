#pragma once

#include "fieldmap/errors.hpp"

#include <string>

namespace fieldmap {

/// Every threshold and tolerance the delineation pipeline consumes.
/// Defaults follow the strict-boundary / relaxed-field rule (0.8 / 0.2),
/// a 10-pixel minimum parcel at 10 m resolution, and one pixel of
/// simplification slack.
struct PipelineConfig {
    double t_boundary = 0.8;             // score threshold for boundary maps
    double t_field = 0.2;                // score threshold for field maps
    double min_field_area = 1000.0;      // map-units^2
    double rdp_epsilon = 10.0;           // map-units
    double wheat_overlap_threshold = 0.5; // fraction, strict >
    int connectivity = 4;                // 4 or 8

    void validate() const;
};

/// Loads a JSON config file whose keys exactly match the field names above.
/// Unknown keys are rejected. Missing keys keep the value in `base`.
PipelineConfig load_config(const std::string& path, const PipelineConfig& base = {});

} // namespace fieldmap
