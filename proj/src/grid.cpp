#include "fieldmap/grid.hpp"

#include <algorithm>
#include <cctype>

namespace fieldmap {

namespace {

void check_dims(int width, int height, size_t count, const char* what) {
    if (width <= 0 || height <= 0)
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": nonpositive dimensions");
    if (count != static_cast<size_t>(width) * height)
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": value count does not match width*height");
}

} // namespace

void ProbabilityRaster::validate() const {
    check_dims(width, height, values.size(), "raster");
    if (nodata.size() != values.size())
        throw Error(ErrorKind::DimensionMismatch, "raster: nodata mask size mismatch");
    gt.validate();
    for (size_t i = 0; i < values.size(); ++i) {
        if (nodata[i])
            continue;
        const float v = values[i];
        if (!(v >= 0.0f && v <= 1.0f))
            throw Error(ErrorKind::ValueOutOfRange,
                        "raster: score outside [0,1] at valid pixel " + std::to_string(i));
    }
}

ProbabilityRaster ProbabilityRaster::create(int width, int height, std::vector<float> values,
                                            std::vector<uint8_t> nodata, GeoTransform gt,
                                            std::string crs) {
    ProbabilityRaster r;
    r.width = width;
    r.height = height;
    r.values = std::move(values);
    r.nodata = std::move(nodata);
    if (r.nodata.empty())
        r.nodata.assign(r.values.size(), 0);
    r.gt = gt;
    r.crs = std::move(crs);
    r.validate();
    return r;
}

ProbabilityRaster ProbabilityRaster::zeros_like(int width, int height, const GeoTransform& gt,
                                                const std::string& crs) {
    ProbabilityRaster r;
    r.width = width;
    r.height = height;
    r.values.assign(static_cast<size_t>(width) * height, 0.0f);
    r.nodata.assign(r.values.size(), 0);
    r.gt = gt;
    r.crs = crs;
    return r;
}

uint32_t LabelRaster::max_label() const {
    uint32_t m = 0;
    for (uint32_t v : labels)
        m = std::max(m, v);
    return m;
}

LabelRaster LabelRaster::zeros_like(int width, int height, const GeoTransform& gt,
                                    const std::string& crs) {
    LabelRaster l;
    l.width = width;
    l.height = height;
    l.labels.assign(static_cast<size_t>(width) * height, 0);
    l.gt = gt;
    l.crs = crs;
    return l;
}

uint64_t BinaryMask::count_true() const {
    uint64_t n = 0;
    for (uint8_t b : bits)
        n += (b != 0);
    return n;
}

BinaryMask BinaryMask::falses_like(int width, int height, const GeoTransform& gt,
                                   const std::string& crs) {
    BinaryMask m;
    m.width = width;
    m.height = height;
    m.bits.assign(static_cast<size_t>(width) * height, 0);
    m.gt = gt;
    m.crs = crs;
    return m;
}

bool crs_is_geographic(const std::string& crs) {
    std::string up;
    up.reserve(crs.size());
    for (char c : crs)
        up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    return up == "EPSG:4326" || up == "OGC:CRS84" || up == "CRS84" || up == "WGS84" ||
           up == "EPSG:4258";
}

} // namespace fieldmap
