#include "fieldmap/vectorize.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace fieldmap {

namespace {

// Directed boundary edge on the pixel-corner lattice, one unit long.
struct LatticeEdge {
    int x0, y0, x1, y1;
};

struct LatticePoint {
    int x, y;
};

uint64_t point_key(int x, int y) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(y)) << 32) | static_cast<uint32_t>(x);
}

// 4-connected islands of identical nonzero labels, in raster-scan order.
struct Region {
    uint32_t label = 0;
    int part = 0;
    uint64_t pixel_count = 0;
};

std::vector<Region> label_regions(const LabelRaster& labels, std::vector<uint32_t>& region_of) {
    const int w = labels.width;
    const int h = labels.height;
    region_of.assign(labels.size(), 0);
    std::vector<Region> regions;
    std::unordered_map<uint32_t, int> parts_seen;

    std::vector<size_t> stack;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const size_t i = labels.idx(r, c);
            if (labels.labels[i] == 0 || region_of[i] != 0)
                continue;
            const uint32_t lbl = labels.labels[i];
            const uint32_t rid = static_cast<uint32_t>(regions.size()) + 1;
            regions.push_back({lbl, parts_seen[lbl]++, 0});
            region_of[i] = rid;
            stack.push_back(i);
            uint64_t count = 0;
            while (!stack.empty()) {
                const size_t cur = stack.back();
                stack.pop_back();
                ++count;
                const int cr = static_cast<int>(cur / w);
                const int cc = static_cast<int>(cur % w);
                const int dr[4] = {-1, 0, 0, 1};
                const int dc[4] = {0, -1, 1, 0};
                for (int k = 0; k < 4; ++k) {
                    const int nr = cr + dr[k];
                    const int nc = cc + dc[k];
                    if (nr < 0 || nr >= h || nc < 0 || nc >= w)
                        continue;
                    const size_t ni = labels.idx(nr, nc);
                    if (labels.labels[ni] == lbl && region_of[ni] == 0) {
                        region_of[ni] = rid;
                        stack.push_back(ni);
                    }
                }
            }
            regions.back().pixel_count = count;
        }
    }
    return regions;
}

// Stitches one region's directed edges into closed lattice loops. At pinch
// points (two outgoing edges) the sharpest right turn keeps each loop simple.
std::vector<std::vector<LatticePoint>> stitch_loops(const std::vector<LatticeEdge>& edges) {
    std::unordered_map<uint64_t, std::pair<int, int>> outgoing; // up to two edge ids per point
    outgoing.reserve(edges.size() * 2);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        auto [it, inserted] = outgoing.try_emplace(point_key(edges[e].x0, edges[e].y0),
                                                   std::pair<int, int>{e, -1});
        if (!inserted) {
            if (it->second.second != -1)
                throw Error(ErrorKind::InvalidConfig, "polygonize: lattice point out-degree > 2");
            it->second.second = e;
        }
    }

    std::vector<uint8_t> used(edges.size(), 0);
    std::vector<std::vector<LatticePoint>> loops;

    auto turn_rank = [](int ix, int iy, int ox, int oy) {
        const int cross = ix * oy - iy * ox;
        if (cross < 0)
            return 0; // right turn
        if (cross == 0)
            return (ix * ox + iy * oy) > 0 ? 1 : 3; // straight, else reverse
        return 2;                                    // left turn
    };

    for (int start = 0; start < static_cast<int>(edges.size()); ++start) {
        if (used[start])
            continue;
        std::vector<LatticePoint> loop;
        int cur = start;
        while (true) {
            used[cur] = 1;
            loop.push_back({edges[cur].x0, edges[cur].y0});
            const int ix = edges[cur].x1 - edges[cur].x0;
            const int iy = edges[cur].y1 - edges[cur].y0;
            if (edges[cur].x1 == edges[start].x0 && edges[cur].y1 == edges[start].y0)
                break;
            const auto it = outgoing.find(point_key(edges[cur].x1, edges[cur].y1));
            if (it == outgoing.end())
                throw Error(ErrorKind::InvalidConfig, "polygonize: dangling boundary edge");
            int next = -1, best_rank = 4;
            for (int cand : {it->second.first, it->second.second}) {
                if (cand < 0 || used[cand])
                    continue;
                const int rank = turn_rank(ix, iy, edges[cand].x1 - edges[cand].x0,
                                           edges[cand].y1 - edges[cand].y0);
                if (rank < best_rank) {
                    best_rank = rank;
                    next = cand;
                }
            }
            if (next < 0)
                throw Error(ErrorKind::InvalidConfig, "polygonize: boundary walk stuck");
            cur = next;
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

// Drops collinear lattice points (circularly) so rings keep corners only.
std::vector<LatticePoint> corners_only(const std::vector<LatticePoint>& loop) {
    const size_t n = loop.size();
    std::vector<LatticePoint> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const LatticePoint& prev = loop[(i + n - 1) % n];
        const LatticePoint& cur = loop[i];
        const LatticePoint& next = loop[(i + 1) % n];
        const bool collinear = (prev.x == cur.x && cur.x == next.x) ||
                               (prev.y == cur.y && cur.y == next.y);
        if (!collinear)
            out.push_back(cur);
    }
    return out;
}

double lattice_signed_area(const std::vector<LatticePoint>& pts) {
    long long acc = 0;
    const size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
        const LatticePoint& a = pts[i];
        const LatticePoint& b = pts[(i + 1) % n];
        acc += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
    }
    return static_cast<double>(acc) / 2.0;
}

} // namespace

std::vector<FieldPolygon> polygonize(const LabelRaster& labels) {
    labels.gt.validate();
    if (labels.gt.is_rotated())
        throw Error(ErrorKind::RotatedGridUnsupported,
                    "polygonize requires an axis-aligned geotransform");

    const int w = labels.width;
    const int h = labels.height;
    std::vector<uint32_t> region_of;
    const std::vector<Region> regions = label_regions(labels, region_of);

    // Boundary edges per region, directed so outer loops come out with
    // positive lattice area and holes negative.
    std::vector<std::vector<LatticeEdge>> edges(regions.size());
    auto region_at = [&](int r, int c) -> uint32_t {
        if (r < 0 || r >= h || c < 0 || c >= w)
            return 0;
        return region_of[static_cast<size_t>(r) * w + c];
    };
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const uint32_t rid = region_of[static_cast<size_t>(r) * w + c];
            if (rid == 0)
                continue;
            auto& bucket = edges[rid - 1];
            if (region_at(r - 1, c) != rid)
                bucket.push_back({c, r, c + 1, r});         // top
            if (region_at(r, c + 1) != rid)
                bucket.push_back({c + 1, r, c + 1, r + 1}); // right
            if (region_at(r + 1, c) != rid)
                bucket.push_back({c + 1, r + 1, c, r + 1}); // bottom
            if (region_at(r, c - 1) != rid)
                bucket.push_back({c, r + 1, c, r});         // left
        }
    }

    const GeoTransform& gt = labels.gt;
    auto to_map_ring = [&](const std::vector<LatticePoint>& pts) {
        Ring ring;
        ring.reserve(pts.size() + 1);
        for (const LatticePoint& p : pts)
            ring.push_back({gt.origin_x + p.x * gt.pixel_width,
                            gt.origin_y + p.y * gt.pixel_height});
        ring.push_back(ring.front());
        return ring;
    };

    std::vector<FieldPolygon> polys;
    polys.reserve(regions.size());
    for (size_t ri = 0; ri < regions.size(); ++ri) {
        const auto loops = stitch_loops(edges[ri]);

        FieldPolygon poly;
        poly.id = regions[ri].label;
        poly.part = regions[ri].part;

        bool have_exterior = false;
        for (const auto& loop : loops) {
            const std::vector<LatticePoint> pts = corners_only(loop);
            const bool is_exterior = lattice_signed_area(pts) > 0.0;
            Ring ring = to_map_ring(pts);
            // Exterior counter-clockwise, holes clockwise, in map orientation.
            const double map_area = signed_ring_area(ring);
            if ((is_exterior && map_area < 0.0) || (!is_exterior && map_area > 0.0))
                std::reverse(ring.begin(), ring.end());
            if (is_exterior) {
                if (have_exterior)
                    throw Error(ErrorKind::InvalidConfig, "polygonize: region traced twice");
                have_exterior = true;
                poly.exterior = std::move(ring);
            } else {
                poly.interiors.push_back(std::move(ring));
            }
        }
        if (!have_exterior)
            throw Error(ErrorKind::InvalidConfig, "polygonize: region without exterior ring");

        double area = area_of(poly.exterior);
        for (const Ring& hole : poly.interiors)
            area -= area_of(hole);
        poly.area = area;
        polys.push_back(std::move(poly));
    }

    std::sort(polys.begin(), polys.end(), [](const FieldPolygon& a, const FieldPolygon& b) {
        return a.id != b.id ? a.id < b.id : a.part < b.part;
    });
    return polys;
}

} // namespace fieldmap
