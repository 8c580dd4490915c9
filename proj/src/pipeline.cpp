#include "fieldmap/pipeline.hpp"

#include "fieldmap/threshold.hpp"
#include "fieldmap/vectorize.hpp"

#include <chrono>

namespace fieldmap {

namespace {

class StageClock {
public:
    explicit StageClock(StageTimings& out) : out_(out) {}

    template <class F>
    auto run(const char* stage, F&& f) {
        const auto start = std::chrono::steady_clock::now();
        auto result = f();
        const auto stop = std::chrono::steady_clock::now();
        out_.emplace_back(stage, std::chrono::duration<double, std::milli>(stop - start).count());
        return result;
    }

private:
    StageTimings& out_;
};

} // namespace

DelineateResult delineate_scene(const ProbabilityRaster& field_scores,
                                const ProbabilityRaster& boundary_scores,
                                const PipelineConfig& cfg) {
    cfg.validate();
    require_same_grid(field_scores, boundary_scores, "delineate");

    DelineateResult result;
    StageClock clock(result.timings);

    const ProbabilityRaster gradual_fields =
        clock.run("gradual_threshold_fields", [&] { return gradual_threshold(field_scores, cfg.t_field); });
    const ProbabilityRaster gradual_boundaries = clock.run(
        "gradual_threshold_boundaries", [&] { return gradual_threshold(boundary_scores, cfg.t_boundary); });
    const ProbabilityRaster basins =
        clock.run("basins_mask", [&] { return basins_mask(gradual_fields, gradual_boundaries); });
    const SeedSet seeds =
        clock.run("extract_seeds", [&] { return extract_seeds(basins, cfg.connectivity); });

    // Flood over the thresholded field mask; inside it the gradual scores
    // equal the raw ones, so depths match the field probabilities.
    BinaryMask flood_mask = BinaryMask::falses_like(gradual_fields.width, gradual_fields.height,
                                                    gradual_fields.gt, gradual_fields.crs);
    for (size_t i = 0; i < flood_mask.bits.size(); ++i)
        flood_mask.bits[i] =
            (!gradual_fields.nodata[i] && gradual_fields.values[i] > 0.0f) ? 1 : 0;

    const LabelRaster flooded = clock.run(
        "watershed", [&] { return watershed(gradual_fields, seeds, flood_mask, cfg.connectivity); });
    result.labels = clock.run(
        "filter_small_labels", [&] { return filter_small_labels(flooded, cfg.min_field_area); });
    std::vector<FieldPolygon> raw_polys =
        clock.run("polygonize", [&] { return polygonize(result.labels); });
    result.polygons = clock.run("simplify_rdp", [&] {
        std::vector<FieldPolygon> simplified;
        simplified.reserve(raw_polys.size());
        for (const FieldPolygon& poly : raw_polys)
            simplified.push_back(simplify_rdp(poly, cfg.rdp_epsilon));
        return simplified;
    });
    return result;
}

PipelineResult pipeline_scene(const ProbabilityRaster& field_scores,
                              const ProbabilityRaster& boundary_scores,
                              const ProbabilityRaster& wheat_scores,
                              const PipelineConfig& cfg) {
    require_same_grid(field_scores, wheat_scores, "pipeline");
    DelineateResult delineated = delineate_scene(field_scores, boundary_scores, cfg);

    PipelineResult result;
    result.labels = std::move(delineated.labels);
    result.timings = std::move(delineated.timings);
    StageClock clock(result.timings);

    // Wheat branch: hard 0.5 threshold; a pre-binarized 0/1 raster passes
    // through unchanged.
    const BinaryMask wheat_mask =
        clock.run("binarize_wheat", [&] { return binarize(wheat_scores, 0.5); });
    result.fusion = clock.run(
        "fuse", [&] { return fuse(result.labels, wheat_mask, cfg.wheat_overlap_threshold); });
    result.polygons = clock.run(
        "annotate", [&] { return annotate(std::move(delineated.polygons), result.fusion); });

    result.wheat_fields = clock.run("wheat_fields_mask", [&] {
        BinaryMask mask = BinaryMask::falses_like(result.labels.width, result.labels.height,
                                                  result.labels.gt, result.labels.crs);
        std::vector<uint8_t> wheat_label(result.labels.max_label() + 1, 0);
        for (const auto& entry : result.fusion.entries)
            wheat_label[entry.label] = entry.is_wheat ? 1 : 0;
        for (size_t i = 0; i < mask.bits.size(); ++i)
            mask.bits[i] = wheat_label[result.labels.labels[i]];
        return mask;
    });
    return result;
}

} // namespace fieldmap
