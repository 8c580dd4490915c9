#include "fieldmap/polygon.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

using nlohmann::json;

namespace fieldmap {

namespace {

double dist2(const MapPoint& a, const MapPoint& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double segment_distance(const MapPoint& p, const MapPoint& a, const MapPoint& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0)
        return std::sqrt(dist2(p, a));
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const MapPoint proj{a.x + t * dx, a.y + t * dy};
    return std::sqrt(dist2(p, proj));
}

void check_closed(const Ring& ring) {
    if (ring.size() < 4)
        throw Error(ErrorKind::OpenRing, "ring needs at least 4 points including closure");
    if (!(ring.front() == ring.back()))
        throw Error(ErrorKind::OpenRing, "ring is not closed");
}

// Douglas-Peucker on an open chain with fixed endpoints. The farthest-point
// tie goes to the lowest index, which makes re-simplification a fixpoint.
void rdp_chain(const std::vector<MapPoint>& pts, size_t first, size_t last, double eps,
               std::vector<uint8_t>& keep) {
    if (last <= first + 1)
        return;
    double max_d = -1.0;
    size_t split = first;
    for (size_t i = first + 1; i < last; ++i) {
        const double d = segment_distance(pts[i], pts[first], pts[last]);
        if (d > max_d) {
            max_d = d;
            split = i;
        }
    }
    if (max_d > eps) {
        keep[split] = 1;
        rdp_chain(pts, first, split, eps, keep);
        rdp_chain(pts, split, last, eps, keep);
    }
}

std::vector<MapPoint> simplify_chain(const std::vector<MapPoint>& pts, double eps) {
    std::vector<uint8_t> keep(pts.size(), 0);
    keep.front() = keep.back() = 1;
    rdp_chain(pts, 0, pts.size() - 1, eps, keep);
    std::vector<MapPoint> out;
    for (size_t i = 0; i < pts.size(); ++i)
        if (keep[i])
            out.push_back(pts[i]);
    return out;
}

// Simplifies one closed ring; returns the input unchanged (and sets
// `degenerate`) when the result would collapse below a valid ring.
Ring simplify_ring(const Ring& ring, double eps, bool& degenerate) {
    check_closed(ring);
    std::vector<MapPoint> verts(ring.begin(), ring.end() - 1);
    const size_t n = verts.size();

    // Anchor at the two mutually farthest vertices, lowest index pair first.
    size_t ai = 0, bi = 1;
    double best = -1.0;
    for (size_t i = 0; i + 1 < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            const double d = dist2(verts[i], verts[j]);
            if (d > best) {
                best = d;
                ai = i;
                bi = j;
            }
        }
    }

    // Two chains: a..b and b..wrap..a.
    std::vector<MapPoint> chain1(verts.begin() + ai, verts.begin() + bi + 1);
    std::vector<MapPoint> chain2;
    chain2.reserve(n - (bi - ai) + 1);
    for (size_t i = bi; i < n; ++i)
        chain2.push_back(verts[i]);
    for (size_t i = 0; i <= ai; ++i)
        chain2.push_back(verts[i]);

    const std::vector<MapPoint> s1 = simplify_chain(chain1, eps);
    const std::vector<MapPoint> s2 = simplify_chain(chain2, eps);

    Ring out;
    out.reserve(s1.size() + s2.size() - 1);
    out.insert(out.end(), s1.begin(), s1.end());
    out.insert(out.end(), s2.begin() + 1, s2.end()); // shares b, closes at a

    if (out.size() < 4 || signed_ring_area(out) == 0.0) {
        degenerate = true;
        return ring;
    }
    return out;
}

} // namespace

double signed_ring_area(const Ring& ring) {
    check_closed(ring);
    // Shoelace relative to the first vertex; keeps precision when map
    // coordinates are large (e.g. UTM eastings).
    const MapPoint o = ring.front();
    double acc = 0.0;
    for (size_t i = 0; i + 1 < ring.size(); ++i) {
        const double ax = ring[i].x - o.x;
        const double ay = ring[i].y - o.y;
        const double bx = ring[i + 1].x - o.x;
        const double by = ring[i + 1].y - o.y;
        acc += ax * by - bx * ay;
    }
    return acc / 2.0;
}

double area_of(const Ring& ring) { return std::abs(signed_ring_area(ring)); }

double distance_to_ring(const MapPoint& p, const Ring& ring) {
    check_closed(ring);
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < ring.size(); ++i)
        best = std::min(best, segment_distance(p, ring[i], ring[i + 1]));
    return best;
}

FieldPolygon simplify_rdp(const FieldPolygon& poly, double epsilon) {
    if (epsilon < 0.0)
        throw Error(ErrorKind::InvalidConfig, "rdp epsilon must be >= 0");
    if (epsilon == 0.0)
        return poly;

    FieldPolygon out = poly;
    bool degenerate = false;
    out.exterior = simplify_ring(poly.exterior, epsilon, degenerate);
    for (size_t i = 0; i < poly.interiors.size(); ++i)
        out.interiors[i] = simplify_ring(poly.interiors[i], epsilon, degenerate);
    out.rdp_degenerate = poly.rdp_degenerate || degenerate;

    double area = area_of(out.exterior);
    for (const Ring& hole : out.interiors)
        area -= area_of(hole);
    out.area = area;
    return out;
}

std::string to_geojson(const std::vector<FieldPolygon>& polygons) {
    json features = json::array();
    for (const FieldPolygon& poly : polygons) {
        json coords = json::array();
        auto ring_coords = [](const Ring& ring) {
            json arr = json::array();
            for (const MapPoint& p : ring)
                arr.push_back({p.x, p.y});
            return arr;
        };
        coords.push_back(ring_coords(poly.exterior));
        for (const Ring& hole : poly.interiors)
            coords.push_back(ring_coords(hole));

        json props;
        props["id"] = poly.id;
        props["part"] = poly.part;
        props["area_m2"] = poly.area;
        if (poly.wheat_fraction)
            props["wheat_fraction"] = *poly.wheat_fraction;
        if (poly.is_wheat)
            props["is_wheat"] = *poly.is_wheat;
        if (poly.year)
            props["year"] = *poly.year;
        if (poly.rdp_degenerate)
            props["rdp_degenerate"] = true;

        json feature;
        feature["type"] = "Feature";
        feature["geometry"] = {{"type", "Polygon"}, {"coordinates", coords}};
        feature["properties"] = props;
        features.push_back(feature);
    }

    json fc;
    fc["type"] = "FeatureCollection";
    fc["features"] = features;
    return fc.dump() + "\n";
}

void write_geojson(const std::vector<FieldPolygon>& polygons, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    out << to_geojson(polygons);
    if (!out)
        throw Error(ErrorKind::IoFailure, "write failed for " + path);
}

} // namespace fieldmap
