#include "fieldmap/commands.hpp"
#include "fieldmap/version.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace fieldmap;

namespace {

struct CommonArgs {
    std::string config_file;
    double t_boundary = 0.0, t_field = 0.0, min_area = 0.0, rdp_epsilon = 0.0, overlap = 0.0;
    int connectivity = 0;
    int jobs = 1;
    std::string out_dir = ".";

    CLI::Option* opt_t_boundary = nullptr;
    CLI::Option* opt_t_field = nullptr;
    CLI::Option* opt_min_area = nullptr;
    CLI::Option* opt_rdp = nullptr;
    CLI::Option* opt_overlap = nullptr;
    CLI::Option* opt_conn = nullptr;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_file, "JSON config file (keys match PipelineConfig)");
    args.opt_t_boundary =
        cmd->add_option("--t-boundary", args.t_boundary, "boundary score threshold (default 0.8)");
    args.opt_t_field =
        cmd->add_option("--t-field", args.t_field, "field score threshold (default 0.2)");
    args.opt_min_area =
        cmd->add_option("--min-area", args.min_area, "minimum parcel area, map-units^2 (default 1000)");
    args.opt_rdp =
        cmd->add_option("--rdp-epsilon", args.rdp_epsilon, "simplification tolerance, map-units (default 10)");
    args.opt_overlap =
        cmd->add_option("--overlap", args.overlap, "wheat overlap threshold (default 0.5)");
    args.opt_conn = cmd->add_option("--connectivity", args.connectivity, "4 or 8 (default 4)");
    cmd->add_option("--jobs", args.jobs, "scene-level parallelism (default 1)");
    cmd->add_option("--out-dir", args.out_dir, "output directory (default .)");
}

// Precedence: defaults < config file < command-line flags.
PipelineConfig effective_config(const CommonArgs& args) {
    PipelineConfig cfg;
    if (!args.config_file.empty())
        cfg = load_config(args.config_file, cfg);
    if (args.opt_t_boundary->count())
        cfg.t_boundary = args.t_boundary;
    if (args.opt_t_field->count())
        cfg.t_field = args.t_field;
    if (args.opt_min_area->count())
        cfg.min_field_area = args.min_area;
    if (args.opt_rdp->count())
        cfg.rdp_epsilon = args.rdp_epsilon;
    if (args.opt_overlap->count())
        cfg.wheat_overlap_threshold = args.overlap;
    if (args.opt_conn->count())
        cfg.connectivity = args.connectivity;
    cfg.validate();
    return cfg;
}

std::vector<SceneInputs> zip_scenes(const std::vector<std::string>& fields,
                                    const std::vector<std::string>& boundaries,
                                    const std::vector<std::string>& wheat, bool need_wheat) {
    if (fields.empty())
        throw Error(ErrorKind::EmptyInput, "no --fields inputs given");
    if (boundaries.size() != fields.size())
        throw Error(ErrorKind::EmptyInput, "--fields and --boundaries counts differ");
    if (need_wheat && wheat.size() != fields.size())
        throw Error(ErrorKind::EmptyInput, "--fields and --wheat counts differ");
    std::vector<SceneInputs> scenes(fields.size());
    for (size_t i = 0; i < fields.size(); ++i) {
        scenes[i].fields = fields[i];
        scenes[i].boundaries = boundaries[i];
        if (need_wheat)
            scenes[i].wheat = wheat[i];
    }
    return scenes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fieldmap: field delineation, crop fusion and change accounting"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // delineate
    auto* delineate = app.add_subcommand("delineate", "score rasters -> labeled parcels + GeoJSON");
    CommonArgs dl_args;
    std::vector<std::string> dl_fields, dl_boundaries;
    delineate->add_option("--fields", dl_fields, "field score raster(s)")->required();
    delineate->add_option("--boundaries", dl_boundaries, "boundary score raster(s)")->required();
    add_common(delineate, dl_args);

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "delineate + wheat fusion");
    CommonArgs pl_args;
    std::vector<std::string> pl_fields, pl_boundaries, pl_wheat;
    pipeline->add_option("--fields", pl_fields, "field score raster(s)")->required();
    pipeline->add_option("--boundaries", pl_boundaries, "boundary score raster(s)")->required();
    pipeline->add_option("--wheat", pl_wheat, "wheat score raster(s) or 0/1 mask(s)")->required();
    add_common(pipeline, pl_args);

    // fuse
    auto* fuse_cmd = app.add_subcommand("fuse", "label raster + wheat mask -> fusion CSV");
    std::string fuse_labels, fuse_wheat, fuse_out = ".";
    double fuse_overlap = 0.5;
    fuse_cmd->add_option("--labels", fuse_labels, "label raster (u32le)")->required();
    fuse_cmd->add_option("--wheat-mask", fuse_wheat, "wheat mask raster")->required();
    fuse_cmd->add_option("--overlap", fuse_overlap, "overlap threshold (default 0.5)");
    fuse_cmd->add_option("--out-dir", fuse_out, "output directory");

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "pred vs truth masks -> metric report");
    std::string met_pred, met_truth, met_method = "pred", met_out = ".";
    double met_threshold = 0.5;
    metrics_cmd->add_option("--pred", met_pred, "prediction raster")->required();
    metrics_cmd->add_option("--truth", met_truth, "ground truth raster")->required();
    metrics_cmd->add_option("--threshold", met_threshold, "binarization threshold (default 0.5)");
    metrics_cmd->add_option("--method", met_method, "method name for the report rows");
    metrics_cmd->add_option("--out-dir", met_out, "output directory");

    // transitions
    auto* trans_cmd = app.add_subcommand("transitions", "multi-year masks -> flow + summary CSV");
    std::vector<std::string> trans_masks;
    std::vector<int> trans_gaps{1, 2};
    int trans_conn = 4;
    std::string trans_out = ".";
    trans_cmd->add_option("--mask", trans_masks, "YEAR=PATH, repeatable")->required();
    trans_cmd->add_option("--gaps", trans_gaps, "year gaps to tabulate (default 1 2)");
    trans_cmd->add_option("--connectivity", trans_conn, "field counting connectivity (default 4)");
    trans_cmd->add_option("--out-dir", trans_out, "output directory");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a deterministic synthetic scene");
    SceneSpec spec;
    std::string synth_out = ".";
    synth_cmd->add_option("--seed", spec.rng_seed, "RNG seed");
    synth_cmd->add_option("--width", spec.width, "scene width, pixels");
    synth_cmd->add_option("--height", spec.height, "scene height, pixels");
    synth_cmd->add_option("--parcels", spec.n_parcels, "number of parcels");
    synth_cmd->add_option("--boundary-width", spec.boundary_width, "truth boundary band, pixels");
    synth_cmd->add_option("--noise-sigma", spec.noise_sigma, "score noise scale [0, 0.5]");
    synth_cmd->add_option("--wheat-fraction", spec.wheat_fraction, "fraction of wheat parcels");
    synth_cmd->add_option("--pixel-size", spec.pixel_size, "pixel size, map-units");
    synth_cmd->add_option("--out-dir", synth_out, "output directory");

    // inspect
    auto* inspect_cmd = app.add_subcommand("inspect", "print raster header and stats");
    std::string inspect_path;
    inspect_cmd->add_option("path", inspect_path, "raster container")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*delineate) {
            RunOptions opt{effective_config(dl_args), dl_args.out_dir, dl_args.jobs};
            cmd_delineate(zip_scenes(dl_fields, dl_boundaries, {}, false), opt);
        } else if (*pipeline) {
            RunOptions opt{effective_config(pl_args), pl_args.out_dir, pl_args.jobs};
            cmd_pipeline(zip_scenes(pl_fields, pl_boundaries, pl_wheat, true), opt);
        } else if (*fuse_cmd) {
            cmd_fuse(fuse_labels, fuse_wheat, fuse_overlap, fuse_out);
        } else if (*metrics_cmd) {
            const MetricsReport r = cmd_metrics(met_pred, met_truth, met_threshold, met_method, met_out);
            std::cout << metrics_csv_header() << metrics_csv_row(met_method, r);
        } else if (*trans_cmd) {
            std::vector<std::pair<int, std::string>> year_masks;
            for (const std::string& item : trans_masks) {
                const size_t eq = item.find('=');
                if (eq == std::string::npos)
                    throw Error(ErrorKind::InvalidConfig, "--mask expects YEAR=PATH, got " + item);
                year_masks.emplace_back(std::stoi(item.substr(0, eq)), item.substr(eq + 1));
            }
            cmd_transitions(year_masks, trans_gaps, trans_conn, trans_out);
        } else if (*synth_cmd) {
            cmd_synth(spec, synth_out);
        } else if (*inspect_cmd) {
            cmd_inspect(inspect_path, std::cout);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
