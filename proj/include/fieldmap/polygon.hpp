#pragma once

#include "fieldmap/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fieldmap {

struct MapPoint {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const MapPoint&) const = default;
};

/// Closed ring: front() == back(), at least 4 points including the closure.
using Ring = std::vector<MapPoint>;

/// Vector parcel in map coordinates. Exterior is counter-clockwise,
/// interior rings (holes) clockwise. `area` is the shoelace area of the
/// exterior minus the holes.
struct FieldPolygon {
    uint32_t id = 0;      // source raster label
    int part = 0;         // island index for labels with multiple islands
    Ring exterior;
    std::vector<Ring> interiors;
    double area = 0.0;

    std::optional<double> wheat_fraction;
    std::optional<bool> is_wheat;
    std::optional<int> year;
    bool rdp_degenerate = false; // a ring could not be simplified without collapsing

    bool operator==(const FieldPolygon&) const = default;
};

double signed_ring_area(const Ring& ring);

/// Absolute shoelace area of a closed ring; orientation does not matter.
/// Throws OpenRing when first and last points differ.
double area_of(const Ring& ring);

/// Distance from a point to the nearest segment of a closed ring.
double distance_to_ring(const MapPoint& p, const Ring& ring);

/// Ramer-Douglas-Peucker simplification of every ring, each ring split at
/// its two mutually farthest vertices (ties to the lowest index pair) so the
/// anchors are deterministic. Every original vertex stays within `epsilon`
/// of the simplified ring. A ring that would collapse below 4 points (or to
/// zero area) is kept unsimplified and the polygon is flagged
/// `rdp_degenerate`. epsilon = 0 returns the polygon unchanged.
FieldPolygon simplify_rdp(const FieldPolygon& poly, double epsilon);

/// GeoJSON FeatureCollection with one Polygon feature per FieldPolygon.
/// Properties: id, part, area_m2, and wheat_fraction / is_wheat / year when
/// present. Coordinates keep full double precision.
std::string to_geojson(const std::vector<FieldPolygon>& polygons);
void write_geojson(const std::vector<FieldPolygon>& polygons, const std::string& path);

} // namespace fieldmap
