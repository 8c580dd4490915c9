#pragma once

#include "fieldmap/grid.hpp"
#include "fieldmap/polygon.hpp"
#include "fieldmap/watershed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

// Test-side builders and independent oracles. Everything here is written
// from the definitions, not from the library implementation, so the two can
// disagree when one of them is wrong.

namespace testutil {

using namespace fieldmap;

inline GeoTransform grid10(int height) {
    GeoTransform gt;
    gt.origin_x = 0.0;
    gt.origin_y = height * 10.0;
    gt.pixel_width = 10.0;
    gt.pixel_height = -10.0;
    return gt;
}

inline ProbabilityRaster raster(int w, int h, std::vector<float> values,
                                std::vector<uint8_t> nodata = {}) {
    ProbabilityRaster r;
    r.width = w;
    r.height = h;
    r.values = std::move(values);
    r.nodata = nodata.empty() ? std::vector<uint8_t>(r.values.size(), 0) : std::move(nodata);
    r.gt = grid10(h);
    r.crs = "EPSG:32636";
    return r;
}

inline BinaryMask mask(int w, int h, std::vector<uint8_t> bits) {
    BinaryMask m;
    m.width = w;
    m.height = h;
    m.bits = std::move(bits);
    m.gt = grid10(h);
    m.crs = "EPSG:32636";
    return m;
}

inline LabelRaster labels(int w, int h, std::vector<uint32_t> values) {
    LabelRaster l;
    l.width = w;
    l.height = h;
    l.labels = std::move(values);
    l.gt = grid10(h);
    l.crs = "EPSG:32636";
    return l;
}

// ---------------------------------------------------------------------------
// Connected-components oracle: iterate min-label propagation to a fixpoint,
// then canonicalize components 1..k by first-pixel scan order.
inline std::vector<uint32_t> cc_oracle(const BinaryMask& m, int connectivity) {
    const int w = m.width, h = m.height;
    std::vector<int64_t> id(m.size(), -1);
    for (size_t i = 0; i < m.size(); ++i)
        if (m.bits[i])
            id[i] = static_cast<int64_t>(i);

    const int dr8[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
    const int dc8[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    const int dr4[4] = {-1, 0, 0, 1};
    const int dc4[4] = {0, -1, 1, 0};
    const int* dr = connectivity == 4 ? dr4 : dr8;
    const int* dc = connectivity == 4 ? dc4 : dc8;
    const int n = connectivity == 4 ? 4 : 8;

    bool changed = true;
    while (changed) {
        changed = false;
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                const size_t i = static_cast<size_t>(r) * w + c;
                if (id[i] < 0)
                    continue;
                for (int k = 0; k < n; ++k) {
                    const int nr = r + dr[k], nc = c + dc[k];
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w)
                        continue;
                    const size_t ni = static_cast<size_t>(nr) * w + nc;
                    if (id[ni] >= 0 && id[ni] < id[i]) {
                        id[i] = id[ni];
                        changed = true;
                    }
                }
            }
        }
    }

    std::vector<uint32_t> out(m.size(), 0);
    std::vector<int64_t> seen;
    for (size_t i = 0; i < m.size(); ++i) {
        if (id[i] < 0)
            continue;
        auto it = std::find(seen.begin(), seen.end(), id[i]);
        if (it == seen.end()) {
            seen.push_back(id[i]);
            it = seen.end() - 1;
        }
        out[i] = static_cast<uint32_t>(it - seen.begin()) + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Watershed oracle: repeatedly assign the globally shallowest (highest score)
// unassigned frontier pixel, labeling it from its earliest-assigned neighbor.
// Seeds get assignment times 0..k-1 in raster-scan order. Also records the
// score at each flood assignment for the monotone-flooding property.
struct WatershedTrace {
    std::vector<uint32_t> labels;
    std::vector<float> flood_scores; // in assignment order, seeds excluded
};

inline WatershedTrace watershed_oracle(const ProbabilityRaster& scores, const LabelRaster& seeds,
                                       const BinaryMask& flood, int connectivity) {
    const int w = scores.width, h = scores.height;
    const size_t n = scores.size();
    WatershedTrace trace;
    trace.labels.assign(n, 0);
    std::vector<int64_t> when(n, -1);
    int64_t t = 0;
    for (size_t i = 0; i < n; ++i) {
        if (seeds.labels[i]) {
            trace.labels[i] = seeds.labels[i];
            when[i] = t++;
        }
    }

    const int dr8[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
    const int dc8[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    const int dr4[4] = {-1, 0, 0, 1};
    const int dc4[4] = {0, -1, 1, 0};
    const int* dr = connectivity == 4 ? dr4 : dr8;
    const int* dc = connectivity == 4 ? dc4 : dc8;
    const int nn = connectivity == 4 ? 4 : 8;

    while (true) {
        int64_t best = -1;
        float best_score = -1.0f;
        uint32_t best_label = 0;
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                const size_t i = static_cast<size_t>(r) * w + c;
                if (trace.labels[i] || !flood.bits[i])
                    continue;
                int64_t earliest = std::numeric_limits<int64_t>::max();
                uint32_t label = 0;
                for (int k = 0; k < nn; ++k) {
                    const int nr = r + dr[k], nc = c + dc[k];
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w)
                        continue;
                    const size_t ni = static_cast<size_t>(nr) * w + nc;
                    if (when[ni] >= 0 && when[ni] < earliest) {
                        earliest = when[ni];
                        label = trace.labels[ni];
                    }
                }
                if (label == 0)
                    continue; // not frontier
                if (best < 0 || scores.values[i] > best_score) {
                    best = static_cast<int64_t>(i);
                    best_score = scores.values[i];
                    best_label = label;
                }
            }
        }
        if (best < 0)
            break;
        trace.labels[best] = best_label;
        when[best] = t++;
        trace.flood_scores.push_back(best_score);
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Even-odd rasterization of a rectilinear polygon back onto its source grid.
// Works in pixel space; assumes an axis-aligned geotransform.
inline void rasterize_polygon(const FieldPolygon& poly, const GeoTransform& gt, int width,
                              int height, uint32_t value, std::vector<uint32_t>& out) {
    auto to_pixel = [&](const MapPoint& p) {
        return MapPoint{(p.x - gt.origin_x) / gt.pixel_width,
                        (p.y - gt.origin_y) / gt.pixel_height};
    };
    std::vector<std::vector<MapPoint>> rings;
    rings.emplace_back();
    for (const MapPoint& p : poly.exterior)
        rings.back().push_back(to_pixel(p));
    for (const Ring& hole : poly.interiors) {
        rings.emplace_back();
        for (const MapPoint& p : hole)
            rings.back().push_back(to_pixel(p));
    }

    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const double px = c + 0.5, py = r + 0.5;
            int crossings = 0;
            for (const auto& ring : rings) {
                for (size_t i = 0; i + 1 < ring.size(); ++i) {
                    const MapPoint& a = ring[i];
                    const MapPoint& b = ring[i + 1];
                    if ((a.y > py) != (b.y > py)) {
                        const double x_at = a.x + (py - a.y) / (b.y - a.y) * (b.x - a.x);
                        if (px < x_at)
                            ++crossings;
                    }
                }
            }
            if (crossings % 2 == 1)
                out[static_cast<size_t>(r) * width + c] = value;
        }
    }
}

// Independent point-to-ring distance for the simplification bound.
inline double ring_distance_oracle(const MapPoint& p, const Ring& ring) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < ring.size(); ++i) {
        const MapPoint& a = ring[i];
        const MapPoint& b = ring[i + 1];
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double len2 = dx * dx + dy * dy;
        double t = len2 == 0.0 ? 0.0 : ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
        t = std::clamp(t, 0.0, 1.0);
        const double ex = p.x - (a.x + t * dx), ey = p.y - (a.y + t * dy);
        best = std::min(best, std::sqrt(ex * ex + ey * ey));
    }
    return best;
}

} // namespace testutil
