// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Tolerances and scene parameters are pinned here, not configurable.

#include "fieldmap/change.hpp"
#include "fieldmap/commands.hpp"
#include "fieldmap/metrics.hpp"
#include "fieldmap/pipeline.hpp"
#include "fieldmap/raster_io.hpp"
#include "fieldmap/synth.hpp"
#include "fieldmap/threshold.hpp"
#include "fieldmap/vectorize.hpp"

#include "helpers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

using namespace fieldmap;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass)
        ++failures;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

// ---------------------------------------------------------------------------
// 1. Gradual thresholding vs argmax ordering over 50 synthetic scenes.
static void criterion_1() {
    const auto start = std::chrono::steady_clock::now();

    std::vector<double> rec_g, rec_a, f1_g, f1_a, iou_g, iou_a, prec_g, prec_a;
    int f1_wins = 0;
    const int n_scenes = 50;

    for (int s = 0; s < n_scenes; ++s) {
        SceneSpec spec;
        spec.rng_seed = 42000 + s; // fixed seed list
        spec.width = 256;
        spec.height = 256;
        spec.n_parcels = 20 + static_cast<int>((spec.rng_seed * 2654435761u) % 41); // 20..60
        spec.boundary_width = 2;
        spec.noise_sigma = 0.15;
        const SceneData scene = generate(spec);

        PipelineConfig cfg;
        cfg.t_field = 0.2;
        cfg.t_boundary = 0.8;

        // gradual-thresholding pipeline prediction: any labeled pixel
        const DelineateResult gradual =
            delineate_scene(scene.field_scores, scene.boundary_scores, cfg);
        BinaryMask pred_g = BinaryMask::falses_like(spec.width, spec.height,
                                                    scene.field_scores.gt, scene.field_scores.crs);
        for (size_t i = 0; i < pred_g.bits.size(); ++i)
            pred_g.bits[i] = gradual.labels.labels[i] != 0;

        // argmax baseline over (background, field, boundary)
        ProbabilityRaster background = ProbabilityRaster::zeros_like(
            spec.width, spec.height, scene.field_scores.gt, scene.field_scores.crs);
        for (size_t i = 0; i < background.values.size(); ++i)
            background.values[i] = std::clamp(
                1.0f - scene.field_scores.values[i] - scene.boundary_scores.values[i], 0.0f, 1.0f);
        const BinaryMask pred_a =
            argmax_mask({&background, &scene.field_scores, &scene.boundary_scores}, 1);

        // ground truth: field pixels are everything outside the boundary band
        const BinaryMask band = boundary_band(scene.truth_labels, spec.boundary_width);
        BinaryMask truth = band;
        for (auto& b : truth.bits)
            b = !b;

        const MetricsReport mg = report(confusion(pred_g, truth));
        const MetricsReport ma = report(confusion(pred_a, truth));
        rec_g.push_back(mg.recall);
        rec_a.push_back(ma.recall);
        f1_g.push_back(mg.f1);
        f1_a.push_back(ma.f1);
        iou_g.push_back(mg.iou);
        iou_a.push_back(ma.iou);
        prec_g.push_back(mg.precision);
        prec_a.push_back(ma.precision);
        if (mg.f1 > ma.f1)
            ++f1_wins;
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double win_rate = static_cast<double>(f1_wins) / n_scenes;
    const bool pass = median(rec_g) > median(rec_a) && median(f1_g) > median(f1_a) &&
                      median(iou_g) > median(iou_a) && median(prec_a) >= median(prec_g) &&
                      win_rate >= 0.8 && secs < 60.0;

    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "median recall %.4f vs %.4f, f1 %.4f vs %.4f, iou %.4f vs %.4f, precision %.4f "
                  "vs %.4f (argmax), per-scene f1 wins %.0f%%, %.1fs",
                  median(rec_g), median(rec_a), median(f1_g), median(f1_a), median(iou_g),
                  median(iou_a), median(prec_g), median(prec_a), win_rate * 100.0, secs);
    verdict(1, "gradual vs argmax ordering on 50 synthetic scenes", pass, detail);
}

// ---------------------------------------------------------------------------
// 2. Priority-flood watershed equals the shallowest-frontier oracle.
static void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(777);
    int mismatches = 0;
    const int n_scenes = 500;

    for (int s = 0; s < n_scenes; ++s) {
        const int w = 16, h = 16;
        const size_t n = static_cast<size_t>(w) * h;

        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        ProbabilityRaster scores = raster(w, h, std::vector<float>(n));
        for (size_t i = 0; i < n; ++i)
            scores.values[i] = static_cast<float>(order[i] + 1) / static_cast<float>(n + 1);

        BinaryMask flood = mask(w, h, std::vector<uint8_t>(n, 0));
        for (auto& b : flood.bits)
            b = std::uniform_real_distribution<double>(0, 1)(rng) < 0.85;

        BinaryMask seed_px = mask(w, h, std::vector<uint8_t>(n, 0));
        const int n_seeds = 2 + static_cast<int>(rng() % 4);
        for (int k = 0; k < n_seeds; ++k) {
            const size_t i = rng() % n;
            if (flood.bits[i])
                seed_px.bits[i] = 1;
        }
        SeedSet seeds;
        seeds.labels = connected_components(seed_px, 4);
        seeds.seed_count = seeds.labels.max_label();

        const LabelRaster out = watershed(scores, seeds, flood, 4);
        const WatershedTrace oracle = watershed_oracle(scores, seeds.labels, flood, 4);
        if (out.labels != oracle.labels)
            ++mismatches;
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = mismatches == 0 && secs < 10.0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d/%d scenes mismatched, %.2fs", mismatches, n_scenes,
                  secs);
    verdict(2, "watershed equals brute-force oracle on 500 random 16x16 scenes", pass, detail);
}

// ---------------------------------------------------------------------------
// 3. Confusion counts equal enumeration; formula identities to 1e-12.
static void criterion_3() {
    std::mt19937_64 rng(888);
    int count_mismatch = 0, identity_fail = 0;
    const int n_pairs = 1000;

    for (int s = 0; s < n_pairs; ++s) {
        BinaryMask pred = mask(16, 16, std::vector<uint8_t>(256, 0));
        BinaryMask truth = mask(16, 16, std::vector<uint8_t>(256, 0));
        for (size_t i = 0; i < 256; ++i) {
            pred.bits[i] = rng() % 2;
            truth.bits[i] = rng() % 2;
        }

        const ConfusionCounts c = confusion(pred, truth);
        ConfusionCounts oracle;
        for (size_t i = 0; i < 256; ++i) {
            if (pred.bits[i] && truth.bits[i]) ++oracle.tp;
            if (pred.bits[i] && !truth.bits[i]) ++oracle.fp;
            if (!pred.bits[i] && truth.bits[i]) ++oracle.fn;
            if (!pred.bits[i] && !truth.bits[i]) ++oracle.tn;
        }
        if (!(c == oracle))
            ++count_mismatch;

        const MetricsReport r = report(c);
        if (c.tp > 0 && r.iou > r.f1 + 1e-15)
            ++identity_fail;
        if (r.precision_defined && r.recall_defined && r.precision + r.recall > 0.0) {
            const double harmonic = 2.0 * r.precision * r.recall / (r.precision + r.recall);
            if (std::abs(r.f1 - harmonic) > 1e-12)
                ++identity_fail;
        }
    }

    const bool pass = count_mismatch == 0 && identity_fail == 0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d count mismatches, %d identity failures over %d pairs",
                  count_mismatch, identity_fail, n_pairs);
    verdict(3, "confusion matches enumeration; iou <= f1 and harmonic identity", pass, detail);
}

// ---------------------------------------------------------------------------
// 4. Polygon area conservation and exact raster round-trip, 100 rasters.
static void criterion_4() {
    std::mt19937_64 rng(999);
    int area_fail = 0, roundtrip_fail = 0;
    const int n_rasters = 100;

    for (int s = 0; s < n_rasters; ++s) {
        const int w = 8 + static_cast<int>(rng() % 25);
        const int h = 8 + static_cast<int>(rng() % 25);
        LabelRaster l = labels(w, h, std::vector<uint32_t>(static_cast<size_t>(w) * h, 0));
        const int n_labels = 1 + static_cast<int>(rng() % 4);
        for (auto& v : l.labels)
            v = static_cast<uint32_t>(rng() % (n_labels + 1));

        const auto polys = polygonize(l);

        uint64_t labeled = 0;
        for (uint32_t v : l.labels)
            labeled += v != 0;
        double poly_area = 0.0;
        for (const FieldPolygon& p : polys)
            poly_area += p.area;
        const double expected = static_cast<double>(labeled) * pixel_area(l.gt);
        if (labeled > 0 && std::abs(poly_area - expected) > 1e-9 * expected)
            ++area_fail;

        std::vector<uint32_t> back(l.size(), 0);
        for (const FieldPolygon& p : polys)
            rasterize_polygon(p, l.gt, w, h, p.id, back);
        if (back != l.labels)
            ++roundtrip_fail;
    }

    const bool pass = area_fail == 0 && roundtrip_fail == 0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d area failures, %d round-trip failures over %d rasters",
                  area_fail, roundtrip_fail, n_rasters);
    verdict(4, "vectorization conserves area (1e-9) and rasterizes back exactly", pass, detail);
}

// ---------------------------------------------------------------------------
// 5. RDP distance bound and idempotence.
static void criterion_5() {
    std::mt19937_64 rng(1212);
    int bound_fail = 0, idempotence_fail = 0;
    int rings_checked = 0;

    for (int s = 0; s < 40; ++s) {
        const int w = 10 + static_cast<int>(rng() % 15);
        const int h = 10 + static_cast<int>(rng() % 15);
        LabelRaster l = labels(w, h, std::vector<uint32_t>(static_cast<size_t>(w) * h, 0));
        for (auto& v : l.labels)
            v = static_cast<uint32_t>(rng() % 3);
        const double eps = std::uniform_real_distribution<double>(1.0, 35.0)(rng);

        for (const FieldPolygon& poly : polygonize(l)) {
            const FieldPolygon simplified = simplify_rdp(poly, eps);

            auto check = [&](const Ring& original, const Ring& result) {
                ++rings_checked;
                for (const MapPoint& v : original)
                    if (ring_distance_oracle(v, result) > eps + 1e-9)
                        ++bound_fail;
            };
            check(poly.exterior, simplified.exterior);
            for (size_t i = 0; i < poly.interiors.size(); ++i)
                check(poly.interiors[i], simplified.interiors[i]);

            const FieldPolygon again = simplify_rdp(simplified, eps);
            if (again.exterior != simplified.exterior || again.interiors != simplified.interiors)
                ++idempotence_fail;
        }
    }

    const bool pass = bound_fail == 0 && idempotence_fail == 0;
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "%d bound violations, %d idempotence failures over %d rings", bound_fail,
                  idempotence_fail, rings_checked);
    verdict(5, "RDP keeps vertices within epsilon and is idempotent", pass, detail);
}

// ---------------------------------------------------------------------------
// 6. Fusion strictness at exactly 50% plus threshold monotonicity.
static void criterion_6() {
    bool pass = true;
    std::string why = "strict >, monotone";

    const LabelRaster l = labels(10, 1, std::vector<uint32_t>(10, 1));
    BinaryMask six = mask(10, 1, {1, 1, 1, 1, 1, 1, 0, 0, 0, 0});
    BinaryMask five = mask(10, 1, {1, 1, 1, 1, 1, 0, 0, 0, 0, 0});
    if (!fuse(l, six, 0.5).entries[0].is_wheat)
        pass = false;
    if (fuse(l, five, 0.5).entries[0].is_wheat)
        pass = false;

    std::mt19937_64 rng(3131);
    for (int s = 0; s < 100 && pass; ++s) {
        LabelRaster rl = labels(12, 12, std::vector<uint32_t>(144, 0));
        BinaryMask wheat = mask(12, 12, std::vector<uint8_t>(144, 0));
        for (size_t i = 0; i < rl.labels.size(); ++i) {
            rl.labels[i] = static_cast<uint32_t>(rng() % 6);
            wheat.bits[i] = rng() % 2;
        }
        const double t1 = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
        const double t2 = std::uniform_real_distribution<double>(t1, 0.95)(rng);
        const FusionReport low = fuse(rl, wheat, t1);
        const FusionReport high = fuse(rl, wheat, t2);
        for (size_t i = 0; i < low.entries.size(); ++i) {
            if (high.entries[i].is_wheat && !low.entries[i].is_wheat) {
                pass = false;
                why = "monotonicity violated";
            }
        }
    }
    verdict(6, "fusion: strictly more than 50% and monotone in the threshold", pass, why);
}

// ---------------------------------------------------------------------------
// 7. Transition conservation and the 9-year flow table shape.
static void criterion_7() {
    std::mt19937_64 rng(4141);
    int conservation_fail = 0;

    for (int s = 0; s < 100; ++s) {
        std::vector<YearMask> years;
        for (int y = 0; y < 3; ++y) {
            YearMask ym;
            ym.year = 2019 + y;
            ym.mask = mask(10, 10, std::vector<uint8_t>(100, 0));
            for (auto& b : ym.mask.bits)
                b = rng() % 2;
            years.push_back(std::move(ym));
        }
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                const TransitionFlow f = transition(years[a], years[b]);
                if (f.persisted_px + f.lost_px != years[a].mask.count_true())
                    ++conservation_fail;
                if (f.persisted_px + f.gained_px != years[b].mask.count_true())
                    ++conservation_fail;
            }
        }
    }

    // nine synthetic years, gaps {1,2}: 8 annual + 7 biannual flows
    std::vector<YearMask> decade;
    for (int y = 2016; y <= 2024; ++y) {
        YearMask ym;
        ym.year = y;
        ym.mask = mask(8, 8, std::vector<uint8_t>(64, 0));
        for (auto& b : ym.mask.bits)
            b = rng() % 2;
        decade.push_back(std::move(ym));
    }
    const auto flows = flow_table(decade, {1, 2});

    const bool pass = conservation_fail == 0 && flows.size() == 15;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d conservation failures, 9-year table has %zu flows",
                  conservation_fail, flows.size());
    verdict(7, "transition conservation exact; 9 years yield 8+7=15 flows", pass, detail);
}

// ---------------------------------------------------------------------------
// 8. cmd_pipeline byte-identical across reruns and across --jobs 1 / 8.
static void criterion_8() {
    const fs::path dir = fs::temp_directory_path() / "fieldmap_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);

    std::vector<SceneInputs> scenes;
    for (int s = 0; s < 3; ++s) {
        SceneSpec spec;
        spec.rng_seed = 555 + s;
        spec.width = 96;
        spec.height = 96;
        spec.n_parcels = 12;
        spec.boundary_width = 2;
        spec.noise_sigma = 0.15;
        const SceneData scene = generate(spec);
        const std::string base = (dir / ("scene" + std::to_string(s))).string();
        write_raster(scene.field_scores, base + "_f");
        write_raster(scene.boundary_scores, base + "_b");
        write_raster(scene.wheat_scores, base + "_w");
        scenes.push_back({base + "_f", base + "_b", base + "_w"});
    }

    RunOptions opt;
    opt.jobs = 1;
    opt.out_dir = (dir / "jobs1").string();
    cmd_pipeline(scenes, opt);
    opt.jobs = 8;
    opt.out_dir = (dir / "jobs8").string();
    cmd_pipeline(scenes, opt);
    opt.jobs = 8;
    opt.out_dir = (dir / "jobs8_again").string();
    cmd_pipeline(scenes, opt);

    // every data product must match byte for byte (the manifest carries
    // wall-clock timings and is metadata, not a data product)
    int diffs = 0;
    for (int s = 0; s < 3; ++s) {
        for (const char* suffix : {"_labels.json", "_labels.bin", "_fields.geojson", "_fusion.csv",
                                   "_wheat_fields.json", "_wheat_fields.bin"}) {
            const std::string name = "scene" + std::to_string(s) + suffix;
            const std::string a = slurp((dir / "jobs1" / name).string());
            const std::string b = slurp((dir / "jobs8" / name).string());
            const std::string c = slurp((dir / "jobs8_again" / name).string());
            if (a.empty() || a != b || b != c)
                ++diffs;
        }
    }

    const bool pass = diffs == 0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d differing products across jobs=1/8 and rerun", diffs);
    verdict(8, "pipeline outputs byte-identical for --jobs 1 and --jobs 8", pass, detail);
}

// ---------------------------------------------------------------------------
// 9. Full delineation of a 1024x1024 scene with ~500 parcels in under 2 s.
static void criterion_9() {
    SceneSpec spec;
    spec.rng_seed = 31337;
    spec.width = 1024;
    spec.height = 1024;
    spec.n_parcels = 500;
    spec.boundary_width = 2;
    spec.noise_sigma = 0.1;
    const SceneData scene = generate(spec);

    const fs::path dir = fs::temp_directory_path() / "fieldmap_acceptance_perf";
    fs::remove_all(dir);
    fs::create_directories(dir);
    write_raster(scene.field_scores, (dir / "f").string());
    write_raster(scene.boundary_scores, (dir / "b").string());

    RunOptions opt;
    opt.jobs = 1;
    opt.out_dir = (dir / "out").string();

    const auto start = std::chrono::steady_clock::now();
    cmd_delineate({{(dir / "f").string(), (dir / "b").string(), ""}}, opt);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const LabelRaster out = read_labels((opt.out_dir + "/labels"));
    const bool pass = secs < 2.0 && out.max_label() >= 300;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%.2fs single-threaded, %u parcels delineated", secs,
                  out.max_label());
    verdict(9, "1024x1024 delineation under 2 s", pass, detail);
}

// ---------------------------------------------------------------------------
// 10. Per-year km2 equals pixel_count * pixel_area * 1e-6 exactly.
static void criterion_10() {
    const fs::path dir = fs::temp_directory_path() / "fieldmap_acceptance_km2";
    fs::remove_all(dir);
    fs::create_directories(dir);

    std::mt19937_64 rng(6161);
    std::vector<std::pair<int, std::string>> year_masks;
    std::vector<uint64_t> pixel_counts;
    for (int y = 0; y < 3; ++y) {
        BinaryMask m = mask(40, 30, std::vector<uint8_t>(1200, 0));
        for (auto& b : m.bits)
            b = rng() % 3 == 0;
        pixel_counts.push_back(m.count_true());
        const std::string path = (dir / ("y" + std::to_string(2019 + y))).string();
        write_mask(m, path);
        year_masks.emplace_back(2019 + y, path);
    }

    cmd_transitions(year_masks, {1, 2}, 4, dir.string());

    // parse years.csv and require the exact printed value
    const std::string csv = slurp((dir / "years.csv").string());
    int exact = 0;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    for (int y = 0; y < 3; ++y) {
        std::getline(lines, line);
        char expected[64];
        std::snprintf(expected, sizeof(expected), "%.17g",
                      static_cast<double>(pixel_counts[y]) * 100.0 * 1e-6);
        const size_t comma1 = line.find(',');
        const size_t comma2 = line.find(',', comma1 + 1);
        if (line.substr(comma1 + 1, comma2 - comma1 - 1) == expected)
            ++exact;
    }

    const bool pass = exact == 3;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d/3 per-year km2 values exact", exact);
    verdict(10, "transitions report km2 = pixel_count * pixel_area * 1e-6 exactly", pass, detail);
}

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    if (failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
