#include "fieldmap/commands.hpp"

#include "fieldmap/change.hpp"
#include "fieldmap/pipeline.hpp"
#include "fieldmap/raster_io.hpp"
#include "fieldmap/vectorize.hpp"
#include "fieldmap/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;

namespace fieldmap {

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorKind::IoFailure, "cannot create output directory " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

[[noreturn]] void rethrow_staged(const Error& e, const std::string& stage, const std::string& input) {
    throw Error(e.kind(), "[stage " + stage + ", input " + input + "] " + e.what());
}

ProbabilityRaster read_stage(const std::string& path, const char* stage) {
    try {
        return read_raster(path);
    } catch (const Error& e) {
        rethrow_staged(e, stage, path);
    }
}

json config_json(const PipelineConfig& cfg) {
    json j;
    j["t_boundary"] = cfg.t_boundary;
    j["t_field"] = cfg.t_field;
    j["min_field_area"] = cfg.min_field_area;
    j["rdp_epsilon"] = cfg.rdp_epsilon;
    j["wheat_overlap_threshold"] = cfg.wheat_overlap_threshold;
    j["connectivity"] = cfg.connectivity;
    return j;
}

json timings_json(const StageTimings& timings) {
    json j = json::object();
    for (const auto& [stage, ms] : timings)
        j[stage] = ms;
    return j;
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const PipelineConfig& cfg, int jobs, json scenes) {
    json manifest;
    manifest["tool"] = "fieldmap";
    manifest["version"] = kVersion;
    manifest["command"] = command;
    manifest["config"] = config_json(cfg);
    manifest["jobs"] = jobs;
    manifest["scenes"] = std::move(scenes);

    const std::string path = join(out_dir, "manifest.json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    out << manifest.dump(2) << "\n";
    if (!out)
        throw Error(ErrorKind::IoFailure, "write failed for " + path);
}

std::string scene_prefix(size_t index, size_t total) {
    return total > 1 ? "scene" + std::to_string(index) + "_" : "";
}

// Runs `work(scene_index)` for every scene on up to `jobs` workers. Scene
// results are independent of the worker count; the first failure wins.
void for_each_scene(size_t count, int jobs, const std::function<void(size_t)>& work) {
    if (jobs < 1)
        throw Error(ErrorKind::InvalidConfig, "--jobs must be >= 1");
    const size_t workers = std::min<size_t>(jobs, count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i)
            work(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    }
    for (std::thread& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace

void cmd_delineate(const std::vector<SceneInputs>& scenes, const RunOptions& opt) {
    if (scenes.empty())
        throw Error(ErrorKind::EmptyInput, "delineate: no scenes given");
    opt.cfg.validate();
    ensure_dir(opt.out_dir);

    std::vector<json> scene_entries(scenes.size());
    for_each_scene(scenes.size(), opt.jobs, [&](size_t i) {
        const SceneInputs& in = scenes[i];
        const std::string prefix = scene_prefix(i, scenes.size());

        const ProbabilityRaster fields = read_stage(in.fields, "read_fields");
        const ProbabilityRaster boundaries = read_stage(in.boundaries, "read_boundaries");

        DelineateResult result;
        try {
            result = delineate_scene(fields, boundaries, opt.cfg);
        } catch (const Error& e) {
            rethrow_staged(e, "delineate", in.fields);
        }

        const std::string labels_path = join(opt.out_dir, prefix + "labels");
        const std::string geojson_path = join(opt.out_dir, prefix + "fields.geojson");
        write_labels(result.labels, labels_path);
        write_geojson(result.polygons, geojson_path);

        json entry;
        entry["fields"] = in.fields;
        entry["boundaries"] = in.boundaries;
        entry["outputs"] = {{"labels", labels_path + ".json"}, {"geojson", geojson_path}};
        entry["timings_ms"] = timings_json(result.timings);
        scene_entries[i] = std::move(entry);
    });

    write_manifest(opt.out_dir, "delineate", opt.cfg, opt.jobs, json(scene_entries));
}

void cmd_pipeline(const std::vector<SceneInputs>& scenes, const RunOptions& opt) {
    if (scenes.empty())
        throw Error(ErrorKind::EmptyInput, "pipeline: no scenes given");
    opt.cfg.validate();
    ensure_dir(opt.out_dir);

    std::vector<json> scene_entries(scenes.size());
    for_each_scene(scenes.size(), opt.jobs, [&](size_t i) {
        const SceneInputs& in = scenes[i];
        const std::string prefix = scene_prefix(i, scenes.size());

        const ProbabilityRaster fields = read_stage(in.fields, "read_fields");
        const ProbabilityRaster boundaries = read_stage(in.boundaries, "read_boundaries");
        const ProbabilityRaster wheat = read_stage(in.wheat, "read_wheat");

        PipelineResult result;
        try {
            result = pipeline_scene(fields, boundaries, wheat, opt.cfg);
        } catch (const Error& e) {
            rethrow_staged(e, "pipeline", in.fields);
        }

        const std::string labels_path = join(opt.out_dir, prefix + "labels");
        const std::string geojson_path = join(opt.out_dir, prefix + "fields.geojson");
        const std::string fusion_path = join(opt.out_dir, prefix + "fusion.csv");
        const std::string wheat_path = join(opt.out_dir, prefix + "wheat_fields");
        write_labels(result.labels, labels_path);
        write_geojson(result.polygons, geojson_path);
        write_fusion_csv(result.fusion, fusion_path);
        write_mask(result.wheat_fields, wheat_path);

        json entry;
        entry["fields"] = in.fields;
        entry["boundaries"] = in.boundaries;
        entry["wheat"] = in.wheat;
        entry["outputs"] = {{"labels", labels_path + ".json"},
                            {"geojson", geojson_path},
                            {"fusion", fusion_path},
                            {"wheat_fields", wheat_path + ".json"}};
        entry["timings_ms"] = timings_json(result.timings);
        scene_entries[i] = std::move(entry);
    });

    write_manifest(opt.out_dir, "pipeline", opt.cfg, opt.jobs, json(scene_entries));
}

void cmd_fuse(const std::string& labels_path, const std::string& wheat_mask_path,
              double overlap_threshold, const std::string& out_dir) {
    ensure_dir(out_dir);
    LabelRaster labels;
    try {
        labels = read_labels(labels_path);
    } catch (const Error& e) {
        rethrow_staged(e, "read_labels", labels_path);
    }
    BinaryMask wheat;
    try {
        wheat = read_mask(wheat_mask_path);
    } catch (const Error& e) {
        rethrow_staged(e, "read_wheat_mask", wheat_mask_path);
    }
    FusionReport report;
    try {
        report = fuse(labels, wheat, overlap_threshold);
    } catch (const Error& e) {
        rethrow_staged(e, "fuse", labels_path);
    }
    write_fusion_csv(report, join(out_dir, "fusion.csv"));
}

MetricsReport cmd_metrics(const std::string& pred_path, const std::string& truth_path,
                          double threshold, const std::string& method,
                          const std::string& out_dir) {
    ensure_dir(out_dir);
    BinaryMask pred, truth;
    try {
        pred = read_mask(pred_path, threshold);
    } catch (const Error& e) {
        rethrow_staged(e, "read_pred", pred_path);
    }
    try {
        truth = read_mask(truth_path, threshold);
    } catch (const Error& e) {
        rethrow_staged(e, "read_truth", truth_path);
    }

    MetricsReport r;
    try {
        r = report(confusion(pred, truth));
    } catch (const Error& e) {
        rethrow_staged(e, "metrics", pred_path);
    }

    const std::string csv_path = join(out_dir, "metrics.csv");
    std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
    if (!csv)
        throw Error(ErrorKind::IoFailure, "cannot open " + csv_path + " for writing");
    csv << metrics_csv_header() << metrics_csv_row(method, r);

    const std::string json_path = join(out_dir, "metrics.json");
    std::ofstream js(json_path, std::ios::binary | std::ios::trunc);
    if (!js)
        throw Error(ErrorKind::IoFailure, "cannot open " + json_path + " for writing");
    js << metrics_json(method, r);
    return r;
}

void cmd_transitions(const std::vector<std::pair<int, std::string>>& year_masks,
                     const std::vector<int>& gaps, int connectivity,
                     const std::string& out_dir) {
    ensure_dir(out_dir);
    std::vector<YearMask> masks;
    masks.reserve(year_masks.size());
    for (const auto& [year, path] : year_masks) {
        YearMask ym;
        ym.year = year;
        try {
            ym.mask = read_mask(path);
        } catch (const Error& e) {
            rethrow_staged(e, "read_year_mask", path);
        }
        masks.push_back(std::move(ym));
    }

    std::vector<TransitionFlow> flows;
    std::vector<YearSummary> summaries;
    try {
        flows = flow_table(masks, gaps);
        std::sort(masks.begin(), masks.end(),
                  [](const YearMask& a, const YearMask& b) { return a.year < b.year; });
        for (const YearMask& m : masks)
            summaries.push_back(year_summary(m, connectivity));
    } catch (const Error& e) {
        rethrow_staged(e, "transitions", out_dir);
    }

    const std::string flows_path = join(out_dir, "flows.csv");
    std::ofstream fl(flows_path, std::ios::binary | std::ios::trunc);
    if (!fl)
        throw Error(ErrorKind::IoFailure, "cannot open " + flows_path + " for writing");
    fl << flow_csv(flows);

    const std::string years_path = join(out_dir, "years.csv");
    std::ofstream yr(years_path, std::ios::binary | std::ios::trunc);
    if (!yr)
        throw Error(ErrorKind::IoFailure, "cannot open " + years_path + " for writing");
    yr << summary_csv(summaries);
}

void cmd_synth(const SceneSpec& spec, const std::string& out_dir) {
    ensure_dir(out_dir);
    SceneData scene;
    try {
        scene = generate(spec);
    } catch (const Error& e) {
        rethrow_staged(e, "synth", out_dir);
    }
    write_labels(scene.truth_labels, join(out_dir, "truth_labels"));
    write_mask(scene.truth_wheat, join(out_dir, "truth_wheat"));
    write_raster(scene.field_scores, join(out_dir, "field_scores"));
    write_raster(scene.boundary_scores, join(out_dir, "boundary_scores"));
    write_raster(scene.wheat_scores, join(out_dir, "wheat_scores"));
    write_geojson(polygonize(scene.truth_labels), join(out_dir, "truth.geojson"));
}

void cmd_inspect(const std::string& path, std::ostream& out) {
    const std::string base = container_base(path);
    std::ifstream header(base + ".json");
    if (!header)
        throw Error(ErrorKind::IoFailure, "cannot open header " + base + ".json");
    json j;
    try {
        header >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedHeader, base + ".json: " + e.what());
    }
    const std::string dtype = j.value("dtype", "?");
    out << "container: " << base << "\n";
    out << "dtype: " << dtype << "\n";
    out << "width: " << j.value("width", 0) << "  height: " << j.value("height", 0) << "\n";
    out << "crs: " << j.value("crs", "?") << "\n";
    if (j.contains("geotransform"))
        out << "geotransform: " << j["geotransform"].dump() << "\n";
    out << "nodata_count: " << j.value("nodata_count", 0) << "\n";

    if (dtype == "f32le") {
        const ProbabilityRaster r = read_raster(base);
        double lo = 1.0, hi = 0.0, sum = 0.0;
        uint64_t valid = 0;
        for (size_t i = 0; i < r.values.size(); ++i) {
            if (r.nodata[i])
                continue;
            lo = std::min(lo, static_cast<double>(r.values[i]));
            hi = std::max(hi, static_cast<double>(r.values[i]));
            sum += r.values[i];
            ++valid;
        }
        if (valid == 0)
            out << "values: all nodata\n";
        else
            out << "values: min " << lo << "  max " << hi << "  mean " << sum / valid << "\n";
    } else if (dtype == "u32le") {
        const LabelRaster l = read_labels(base);
        uint64_t background = 0;
        for (uint32_t v : l.labels)
            background += v == 0;
        out << "labels: max " << l.max_label() << "  background px " << background << "\n";
    }
}

} // namespace fieldmap
