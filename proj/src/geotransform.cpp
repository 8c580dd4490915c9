#include "fieldmap/geotransform.hpp"

#include <cmath>

namespace fieldmap {

void GeoTransform::validate() const {
    if (pixel_width == 0.0 || pixel_height == 0.0)
        throw Error(ErrorKind::InvalidConfig, "geotransform pixel size must be nonzero");
    if (det() == 0.0)
        throw Error(ErrorKind::InvalidConfig, "geotransform is singular");
    if (!std::isfinite(origin_x) || !std::isfinite(origin_y) || !std::isfinite(pixel_width) ||
        !std::isfinite(pixel_height) || !std::isfinite(row_rotation) || !std::isfinite(col_rotation))
        throw Error(ErrorKind::InvalidConfig, "geotransform has non-finite entries");
}

double pixel_area(const GeoTransform& gt) {
    gt.validate();
    return std::abs(gt.det());
}

} // namespace fieldmap
