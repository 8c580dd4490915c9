#include "fieldmap/watershed.hpp"

#include <queue>
#include <vector>

namespace fieldmap {

namespace {

struct Offsets {
    int count;
    int dr[8];
    int dc[8];
};

Offsets neighbor_offsets(int connectivity) {
    if (connectivity == 4)
        return {4, {-1, 0, 0, 1}, {0, -1, 1, 0}};
    if (connectivity == 8)
        return {8, {-1, -1, -1, 0, 0, 1, 1, 1}, {-1, 0, 1, -1, 1, -1, 0, 1}};
    throw Error(ErrorKind::InvalidConfig, "connectivity must be 4 or 8");
}

} // namespace

LabelRaster connected_components(const BinaryMask& mask, int connectivity) {
    const Offsets nb = neighbor_offsets(connectivity);
    LabelRaster out = LabelRaster::zeros_like(mask.width, mask.height, mask.gt, mask.crs);

    std::vector<size_t> stack;
    uint32_t next_label = 0;
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            const size_t i = mask.idx(r, c);
            if (!mask.bits[i] || out.labels[i])
                continue;
            ++next_label;
            out.labels[i] = next_label;
            stack.push_back(i);
            while (!stack.empty()) {
                const size_t cur = stack.back();
                stack.pop_back();
                const int cr = static_cast<int>(cur / mask.width);
                const int cc = static_cast<int>(cur % mask.width);
                for (int k = 0; k < nb.count; ++k) {
                    const int nr = cr + nb.dr[k];
                    const int nc = cc + nb.dc[k];
                    if (nr < 0 || nr >= mask.height || nc < 0 || nc >= mask.width)
                        continue;
                    const size_t ni = mask.idx(nr, nc);
                    if (mask.bits[ni] && !out.labels[ni]) {
                        out.labels[ni] = next_label;
                        stack.push_back(ni);
                    }
                }
            }
        }
    }
    return out;
}

SeedSet extract_seeds(const ProbabilityRaster& basins, int connectivity) {
    BinaryMask positive = BinaryMask::falses_like(basins.width, basins.height, basins.gt, basins.crs);
    for (size_t i = 0; i < positive.bits.size(); ++i)
        positive.bits[i] = (!basins.nodata[i] && basins.values[i] > 0.0f) ? 1 : 0;

    SeedSet seeds;
    seeds.labels = connected_components(positive, connectivity);
    seeds.seed_count = seeds.labels.max_label();
    return seeds;
}

namespace {

// Priority-queue entry for the flood. Highest field score (shallowest basin)
// pops first; equal scores pop FIFO by insertion sequence.
struct FloodEntry {
    float score;
    uint64_t seq;
    uint32_t index;
    uint32_t label;
};

struct FloodOrder {
    bool operator()(const FloodEntry& a, const FloodEntry& b) const {
        if (a.score != b.score)
            return a.score < b.score; // max-heap on score
        return a.seq > b.seq;         // then min-heap on sequence
    }
};

} // namespace

LabelRaster watershed(const ProbabilityRaster& field_scores, const SeedSet& seeds,
                      const BinaryMask& flood_mask, int connectivity) {
    require_same_grid(field_scores, seeds.labels, "watershed");
    require_same_grid(field_scores, flood_mask, "watershed");
    const Offsets nb = neighbor_offsets(connectivity);
    const int width = field_scores.width;
    const int height = field_scores.height;

    LabelRaster out = LabelRaster::zeros_like(width, height, field_scores.gt, field_scores.crs);

    // 0 = untouched, 1 = queued, 2 = finalized
    std::vector<uint8_t> state(out.size(), 0);

    // Seed pixels keep their label unconditionally.
    for (size_t i = 0; i < out.size(); ++i) {
        if (seeds.labels.labels[i]) {
            out.labels[i] = seeds.labels.labels[i];
            state[i] = 2;
        }
    }

    std::priority_queue<FloodEntry, std::vector<FloodEntry>, FloodOrder> heap;
    uint64_t seq = 0;

    auto push_neighbors = [&](int r, int c, uint32_t label) {
        for (int k = 0; k < nb.count; ++k) {
            const int nr = r + nb.dr[k];
            const int nc = c + nb.dc[k];
            if (nr < 0 || nr >= height || nc < 0 || nc >= width)
                continue;
            const size_t ni = static_cast<size_t>(nr) * width + nc;
            if (state[ni] != 0 || !flood_mask.bits[ni])
                continue;
            state[ni] = 1;
            heap.push({field_scores.values[ni], seq++, static_cast<uint32_t>(ni), label});
        }
    };

    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            if (state[static_cast<size_t>(r) * width + c] == 2)
                push_neighbors(r, c, out.labels[static_cast<size_t>(r) * width + c]);

    while (!heap.empty()) {
        const FloodEntry e = heap.top();
        heap.pop();
        if (state[e.index] == 2)
            continue;
        state[e.index] = 2;
        out.labels[e.index] = e.label;
        push_neighbors(static_cast<int>(e.index / width), static_cast<int>(e.index % width), e.label);
    }
    return out;
}

LabelRaster filter_small_labels(const LabelRaster& labels, double min_area) {
    if (min_area > 0.0 && crs_is_geographic(labels.crs))
        throw Error(ErrorKind::GeographicCrs,
                    "filter_small_labels: area threshold needs a projected CRS, got '" +
                        labels.crs + "'");
    const double px_area = pixel_area(labels.gt);
    const uint32_t max_label = labels.max_label();

    std::vector<uint64_t> counts(static_cast<size_t>(max_label) + 1, 0);
    for (uint32_t v : labels.labels)
        ++counts[v];

    // Dense renumbering in ascending original-label order; equality keeps.
    std::vector<uint32_t> remap(counts.size(), 0);
    uint32_t next = 0;
    for (uint32_t lbl = 1; lbl <= max_label; ++lbl) {
        if (counts[lbl] == 0)
            continue;
        const double area = static_cast<double>(counts[lbl]) * px_area;
        if (area >= min_area)
            remap[lbl] = ++next;
    }

    LabelRaster out = labels;
    for (uint32_t& v : out.labels)
        v = remap[v];
    return out;
}

} // namespace fieldmap
