#pragma once

#include "fieldmap/errors.hpp"
#include "fieldmap/geotransform.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fieldmap {

/// Per-pixel scores in [0,1] with an explicit nodata mask. Row-major.
struct ProbabilityRaster {
    int width = 0;
    int height = 0;
    std::vector<float> values;
    std::vector<uint8_t> nodata; // 1 = nodata
    GeoTransform gt;
    std::string crs;

    size_t size() const { return static_cast<size_t>(width) * height; }
    size_t idx(int row, int col) const { return static_cast<size_t>(row) * width + col; }
    float at(int row, int col) const { return values[idx(row, col)]; }
    bool is_nodata(int row, int col) const { return nodata[idx(row, col)] != 0; }

    /// Throws on any invariant violation: bad dimensions, value count,
    /// out-of-[0,1] score at a non-nodata pixel, invalid geotransform.
    void validate() const;

    /// Validating constructor for externally supplied data.
    static ProbabilityRaster create(int width, int height, std::vector<float> values,
                                    std::vector<uint8_t> nodata, GeoTransform gt, std::string crs);

    /// All-zero raster with no nodata, sharing grid geometry.
    static ProbabilityRaster zeros_like(int width, int height, const GeoTransform& gt,
                                        const std::string& crs);
};

/// Non-negative instance labels; 0 is background. Row-major.
struct LabelRaster {
    int width = 0;
    int height = 0;
    std::vector<uint32_t> labels;
    GeoTransform gt;
    std::string crs;

    size_t size() const { return static_cast<size_t>(width) * height; }
    size_t idx(int row, int col) const { return static_cast<size_t>(row) * width + col; }
    uint32_t at(int row, int col) const { return labels[idx(row, col)]; }

    uint32_t max_label() const;

    static LabelRaster zeros_like(int width, int height, const GeoTransform& gt,
                                  const std::string& crs);
};

/// One boolean per pixel. Row-major.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits; // 0/1
    GeoTransform gt;
    std::string crs;

    size_t size() const { return static_cast<size_t>(width) * height; }
    size_t idx(int row, int col) const { return static_cast<size_t>(row) * width + col; }
    bool at(int row, int col) const { return bits[idx(row, col)] != 0; }

    uint64_t count_true() const;

    static BinaryMask falses_like(int width, int height, const GeoTransform& gt,
                                  const std::string& crs);
};

/// True when the identifier names a geographic (degree-unit) CRS. Area math
/// refuses to run on those; everything else is trusted to be projected.
bool crs_is_geographic(const std::string& crs);

// Grid-compatibility checks: dimensions, geotransform and CRS must all match.
// `context` names the operation for the error message.
template <class A, class B>
void require_same_grid(const A& a, const B& b, const char* context) {
    if (a.width != b.width || a.height != b.height || !(a.gt == b.gt) || a.crs != b.crs)
        throw Error(ErrorKind::GridMismatch, std::string(context) + ": inputs are not on the same grid");
}

} // namespace fieldmap
