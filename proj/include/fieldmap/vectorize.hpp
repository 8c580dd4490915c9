#pragma once

#include "fieldmap/grid.hpp"
#include "fieldmap/polygon.hpp"

#include <vector>

namespace fieldmap {

/// Traces every labeled region of the raster into a polygon by following
/// pixel edges on the corner lattice, so pre-simplification areas equal
/// pixel count times pixel area exactly and rasterizing the polygon back
/// reproduces the region. Same-label islands are 4-connected regions; each
/// island becomes its own polygon with the label as id and a running part
/// index. Enclosed background (or foreign labels) becomes interior rings.
/// Rotated geotransforms are not supported.
std::vector<FieldPolygon> polygonize(const LabelRaster& labels);

} // namespace fieldmap
