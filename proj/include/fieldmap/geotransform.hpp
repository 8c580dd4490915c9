#pragma once

#include "fieldmap/errors.hpp"

namespace fieldmap {

/// Six-parameter affine map from pixel indices to map coordinates:
///   map_x = origin_x + col * pixel_width  + row * row_rotation
///   map_y = origin_y + col * col_rotation + row * pixel_height
/// North-up grids have pixel_height < 0.
struct GeoTransform {
    double origin_x = 0.0;
    double pixel_width = 1.0;
    double row_rotation = 0.0;
    double origin_y = 0.0;
    double col_rotation = 0.0;
    double pixel_height = -1.0;

    double det() const { return pixel_width * pixel_height - row_rotation * col_rotation; }

    bool is_rotated() const { return row_rotation != 0.0 || col_rotation != 0.0; }

    void map_xy(double col, double row, double& x, double& y) const {
        x = origin_x + col * pixel_width + row * row_rotation;
        y = origin_y + col * col_rotation + row * pixel_height;
    }

    /// Throws InvalidConfig when pixel_width, pixel_height or the affine
    /// determinant is zero.
    void validate() const;

    bool operator==(const GeoTransform&) const = default;
};

/// Area of one pixel in map units squared: |determinant| of the affine part.
/// Invariant under the sign of pixel_height.
double pixel_area(const GeoTransform& gt);

} // namespace fieldmap
