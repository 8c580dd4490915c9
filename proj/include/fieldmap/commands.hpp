#pragma once

#include "fieldmap/config.hpp"
#include "fieldmap/metrics.hpp"
#include "fieldmap/synth.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fieldmap {

/// One scene's input rasters. `wheat` is unused by cmd_delineate.
struct SceneInputs {
    std::string fields;
    std::string boundaries;
    std::string wheat;
};

/// Shared command options. `jobs` bounds scene-level parallelism only;
/// per-scene results never depend on it.
struct RunOptions {
    PipelineConfig cfg;
    std::string out_dir = ".";
    int jobs = 1;
};

// Every command writes its data products plus a manifest.json recording the
// tool version, the effective config, input/output paths and per-stage
// timings. Failures carry [stage ..., input ...] attribution in the message.

/// Delineation only: labels raster + simplified polygons GeoJSON per scene.
void cmd_delineate(const std::vector<SceneInputs>& scenes, const RunOptions& opt);

/// Full pipeline: delineation, wheat fusion, annotated GeoJSON, fusion CSV
/// and the rasterized wheat-field mask per scene.
void cmd_pipeline(const std::vector<SceneInputs>& scenes, const RunOptions& opt);

/// Standalone fusion of an existing label raster with a wheat mask.
void cmd_fuse(const std::string& labels_path, const std::string& wheat_mask_path,
              double overlap_threshold, const std::string& out_dir);

/// Binarizes both rasters at `threshold` and emits metrics.csv/metrics.json.
MetricsReport cmd_metrics(const std::string& pred_path, const std::string& truth_path,
                          double threshold, const std::string& method,
                          const std::string& out_dir);

/// Multi-year accounting: flows.csv + years.csv for the given year gaps.
void cmd_transitions(const std::vector<std::pair<int, std::string>>& year_masks,
                     const std::vector<int>& gaps, int connectivity,
                     const std::string& out_dir);

/// Writes the five synthetic rasters and the truth polygons GeoJSON.
void cmd_synth(const SceneSpec& spec, const std::string& out_dir);

/// Prints a raster container's header and basic stats.
void cmd_inspect(const std::string& path, std::ostream& out);

} // namespace fieldmap
