#include "fieldmap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_set>
#include <vector>

namespace fieldmap {

uint64_t SplitMix64::next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::gaussian() {
    double sum = 0.0;
    for (int i = 0; i < 12; ++i)
        sum += uniform01();
    return sum - 6.0;
}

void SceneSpec::validate() const {
    if (width <= 0 || height <= 0)
        throw Error(ErrorKind::SpecInvalid, "scene dimensions must be positive");
    if (n_parcels < 1)
        throw Error(ErrorKind::SpecInvalid, "n_parcels must be >= 1");
    if (static_cast<int64_t>(n_parcels) > static_cast<int64_t>(width) * height)
        throw Error(ErrorKind::SpecInvalid, "n_parcels exceeds pixel count");
    if (boundary_width < 0)
        throw Error(ErrorKind::SpecInvalid, "boundary_width must be >= 0");
    if (!(noise_sigma >= 0.0 && noise_sigma <= 0.5))
        throw Error(ErrorKind::SpecInvalid, "noise_sigma must be in [0, 0.5]");
    if (!(wheat_fraction >= 0.0 && wheat_fraction <= 1.0))
        throw Error(ErrorKind::SpecInvalid, "wheat_fraction must be in [0, 1]");
    if (!(pixel_size > 0.0))
        throw Error(ErrorKind::SpecInvalid, "pixel_size must be positive");
}

namespace {

// Chebyshev distance to the nearest parcel-edge pixel (multi-source BFS with
// 8-neighborhood). Edge pixels have a 4-neighbor with a different label or
// sit on the raster border.
std::vector<int> edge_distance(const LabelRaster& labels) {
    const int w = labels.width;
    const int h = labels.height;
    std::vector<int> dist(labels.size(), std::numeric_limits<int>::max());
    std::deque<size_t> queue;

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const size_t i = labels.idx(r, c);
            const uint32_t lbl = labels.labels[i];
            bool edge = r == 0 || r == h - 1 || c == 0 || c == w - 1;
            if (!edge) {
                edge = labels.at(r - 1, c) != lbl || labels.at(r + 1, c) != lbl ||
                       labels.at(r, c - 1) != lbl || labels.at(r, c + 1) != lbl;
            }
            if (edge) {
                dist[i] = 0;
                queue.push_back(i);
            }
        }
    }

    const int dr[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
    const int dc[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    while (!queue.empty()) {
        const size_t cur = queue.front();
        queue.pop_front();
        const int cr = static_cast<int>(cur / w);
        const int cc = static_cast<int>(cur % w);
        for (int k = 0; k < 8; ++k) {
            const int nr = cr + dr[k];
            const int nc = cc + dc[k];
            if (nr < 0 || nr >= h || nc < 0 || nc >= w)
                continue;
            const size_t ni = static_cast<size_t>(nr) * w + nc;
            if (dist[ni] > dist[cur] + 1) {
                dist[ni] = dist[cur] + 1;
                queue.push_back(ni);
            }
        }
    }
    return dist;
}

} // namespace

BinaryMask boundary_band(const LabelRaster& labels, int width) {
    BinaryMask band = BinaryMask::falses_like(labels.width, labels.height, labels.gt, labels.crs);
    if (width <= 0)
        return band;
    const std::vector<int> dist = edge_distance(labels);
    for (size_t i = 0; i < band.bits.size(); ++i)
        band.bits[i] = dist[i] < width ? 1 : 0;
    return band;
}

SceneData generate(const SceneSpec& spec) {
    spec.validate();
    SplitMix64 rng(spec.rng_seed);

    const int w = spec.width;
    const int h = spec.height;
    GeoTransform gt;
    gt.origin_x = 0.0;
    gt.origin_y = static_cast<double>(h) * spec.pixel_size;
    gt.pixel_width = spec.pixel_size;
    gt.pixel_height = -spec.pixel_size;
    const std::string crs = "EPSG:32636";

    // Distinct Voronoi sites, drawn with rejection on duplicates.
    std::vector<int> site_x(spec.n_parcels), site_y(spec.n_parcels);
    std::unordered_set<uint64_t> taken;
    for (int i = 0; i < spec.n_parcels; ++i) {
        while (true) {
            const int x = static_cast<int>(rng.uniform01() * w);
            const int y = static_cast<int>(rng.uniform01() * h);
            const uint64_t key = (static_cast<uint64_t>(y) << 32) | static_cast<uint32_t>(x);
            if (taken.insert(key).second) {
                site_x[i] = std::min(x, w - 1);
                site_y[i] = std::min(y, h - 1);
                break;
            }
        }
    }

    std::vector<uint8_t> parcel_is_wheat(spec.n_parcels);
    for (int i = 0; i < spec.n_parcels; ++i)
        parcel_is_wheat[i] = rng.uniform01() < spec.wheat_fraction ? 1 : 0;

    SceneData scene;
    scene.truth_labels = LabelRaster::zeros_like(w, h, gt, crs);

    // Per-pixel nearest site, integer distances, ties to the lowest index.
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            int64_t best = std::numeric_limits<int64_t>::max();
            int winner = 0;
            for (int s = 0; s < spec.n_parcels; ++s) {
                const int64_t dx = c - site_x[s];
                const int64_t dy = r - site_y[s];
                const int64_t d = dx * dx + dy * dy;
                if (d < best) {
                    best = d;
                    winner = s;
                }
            }
            scene.truth_labels.labels[scene.truth_labels.idx(r, c)] =
                static_cast<uint32_t>(winner) + 1;
        }
    }

    scene.truth_wheat = BinaryMask::falses_like(w, h, gt, crs);
    for (size_t i = 0; i < scene.truth_wheat.bits.size(); ++i)
        scene.truth_wheat.bits[i] = parcel_is_wheat[scene.truth_labels.labels[i] - 1];

    // Score ramp: proximity falls linearly from 1 at an edge pixel to 0 at
    // three boundary widths out, so score uncertainty reaches beyond the
    // truth band the way model confidence maps do.
    const std::vector<int> dist = edge_distance(scene.truth_labels);
    const double ramp = 3.0 * std::max(spec.boundary_width, 1);

    scene.field_scores = ProbabilityRaster::zeros_like(w, h, gt, crs);
    scene.boundary_scores = ProbabilityRaster::zeros_like(w, h, gt, crs);
    scene.wheat_scores = ProbabilityRaster::zeros_like(w, h, gt, crs);

    const double sigma = spec.noise_sigma;
    for (size_t i = 0; i < scene.field_scores.values.size(); ++i) {
        const double proximity = dist[i] < ramp ? 1.0 - static_cast<double>(dist[i]) / ramp : 0.0;
        double field = 1.0 - proximity;
        double boundary = proximity;
        double wheat = parcel_is_wheat[scene.truth_labels.labels[i] - 1] ? 1.0 : 0.0;
        if (sigma > 0.0) {
            field += sigma * rng.gaussian();
            boundary += sigma * rng.gaussian();
            wheat += sigma * rng.gaussian();
        }
        scene.field_scores.values[i] = static_cast<float>(std::clamp(field, 0.0, 1.0));
        scene.boundary_scores.values[i] = static_cast<float>(std::clamp(boundary, 0.0, 1.0));
        scene.wheat_scores.values[i] = static_cast<float>(std::clamp(wheat, 0.0, 1.0));
    }
    return scene;
}

} // namespace fieldmap
