#pragma once

#include "fieldmap/grid.hpp"

#include <string>

namespace fieldmap {

// Raster container: a JSON header `<name>.json` plus a payload `<name>.bin`.
// Header fields: width, height, dtype ("f32le" for scores, "u32le" for
// labels), geotransform (6 numbers: origin_x, pixel_width, row_rotation,
// origin_y, col_rotation, pixel_height), crs, nodata_count.
// Payload: width*height little-endian values row-major, then
// ceil(width*height/8) bytes of nodata bitmask, packed row-major LSB-first
// (bit set = nodata).
//
// Paths may point at the `.json`, the `.bin`, or the bare base name.

std::string container_base(const std::string& path);

ProbabilityRaster read_raster(const std::string& path);
void write_raster(const ProbabilityRaster& raster, const std::string& path);

LabelRaster read_labels(const std::string& path);
void write_labels(const LabelRaster& labels, const std::string& path);

/// Reads either dtype. f32le payloads binarize at `threshold` (nodata =
/// false); u32le payloads are true wherever the label is nonzero.
BinaryMask read_mask(const std::string& path, double threshold = 0.5);

/// Masks serialize as f32le rasters of 0.0/1.0 with an empty nodata mask.
void write_mask(const BinaryMask& mask, const std::string& path);

} // namespace fieldmap
