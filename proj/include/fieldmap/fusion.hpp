#pragma once

#include "fieldmap/grid.hpp"
#include "fieldmap/polygon.hpp"

#include <string>
#include <vector>

namespace fieldmap {

/// Per-parcel crop overlap accounting. A parcel is wheat iff strictly more
/// than `threshold` of its pixels are wheat pixels.
struct FusionReport {
    struct Entry {
        uint32_t label = 0;
        uint64_t pixel_count = 0;
        uint64_t wheat_pixel_count = 0;
        double wheat_fraction = 0.0;
        bool is_wheat = false;
    };

    double threshold = 0.5;
    std::vector<Entry> entries; // ascending by label

    const Entry* find(uint32_t label) const;
};

/// Counts the overlap of every label with the wheat mask on the raster
/// domain. Fractions attach to regions, not label values, so the result is
/// invariant under label permutations.
FusionReport fuse(const LabelRaster& labels, const BinaryMask& wheat_mask, double threshold);

/// Copies wheat_fraction / is_wheat from the report onto each polygon.
/// Geometry is untouched. Throws UnknownLabel when a polygon id is missing
/// from the report.
std::vector<FieldPolygon> annotate(std::vector<FieldPolygon> polygons, const FusionReport& report);

/// CSV with columns label,pixel_count,wheat_pixel_count,wheat_fraction,is_wheat.
std::string fusion_csv(const FusionReport& report);
void write_fusion_csv(const FusionReport& report, const std::string& path);

} // namespace fieldmap
