#include "fieldmap/raster_io.hpp"

#include <json.hpp>

#include <bit>
#include <cstring>
#include <fstream>

using nlohmann::json;

namespace fieldmap {

namespace {

constexpr int64_t kMaxPixels = int64_t{1} << 30;

size_t mask_bytes(size_t n) { return (n + 7) / 8; }

void put_u32le(std::string& out, uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

uint32_t get_u32le(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

struct Header {
    int width = 0;
    int height = 0;
    std::string dtype;
    GeoTransform gt;
    std::string crs;
    int64_t nodata_count = 0;
};

Header parse_header(const std::string& json_path) {
    std::ifstream in(json_path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::IoFailure, "cannot open header " + json_path);

    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedHeader, json_path + ": " + e.what());
    }

    Header h;
    try {
        h.width = j.at("width").get<int>();
        h.height = j.at("height").get<int>();
        h.dtype = j.at("dtype").get<std::string>();
        h.crs = j.at("crs").get<std::string>();
        h.nodata_count = j.at("nodata_count").get<int64_t>();
        const auto& g = j.at("geotransform");
        if (!g.is_array() || g.size() != 6)
            throw Error(ErrorKind::MalformedHeader, json_path + ": geotransform must have 6 entries");
        h.gt.origin_x = g[0].get<double>();
        h.gt.pixel_width = g[1].get<double>();
        h.gt.row_rotation = g[2].get<double>();
        h.gt.origin_y = g[3].get<double>();
        h.gt.col_rotation = g[4].get<double>();
        h.gt.pixel_height = g[5].get<double>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedHeader, json_path + ": " + e.what());
    }

    if (h.width <= 0 || h.height <= 0 ||
        static_cast<int64_t>(h.width) * h.height > kMaxPixels)
        throw Error(ErrorKind::MalformedHeader, json_path + ": bad dimensions");
    if (h.dtype != "f32le" && h.dtype != "u32le")
        throw Error(ErrorKind::MalformedHeader, json_path + ": unsupported dtype " + h.dtype);
    if (h.nodata_count < 0 || h.nodata_count > static_cast<int64_t>(h.width) * h.height)
        throw Error(ErrorKind::MalformedHeader, json_path + ": bad nodata_count");
    try {
        h.gt.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::MalformedHeader, json_path + ": " + e.what());
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::IoFailure, "cannot open payload " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw Error(ErrorKind::IoFailure, "read failed for " + path);
    return data;
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out)
        throw Error(ErrorKind::IoFailure, "write failed for " + path);
}

// payload = values (4 bytes each, little-endian) + packed nodata bitmask
std::pair<std::vector<uint32_t>, std::vector<uint8_t>> decode_payload(const std::string& bin_path,
                                                                      size_t n,
                                                                      int64_t nodata_count) {
    const std::string data = read_file(bin_path);
    const size_t expected = n * 4 + mask_bytes(n);
    if (data.size() != expected)
        throw Error(ErrorKind::DimensionMismatch,
                    bin_path + ": payload has " + std::to_string(data.size()) + " bytes, expected " +
                        std::to_string(expected));

    const auto* raw = reinterpret_cast<const unsigned char*>(data.data());
    std::vector<uint32_t> words(n);
    for (size_t i = 0; i < n; ++i)
        words[i] = get_u32le(raw + i * 4);

    std::vector<uint8_t> nodata(n, 0);
    int64_t set_bits = 0;
    const unsigned char* mask = raw + n * 4;
    for (size_t i = 0; i < n; ++i) {
        if (mask[i / 8] & (1u << (i % 8))) {
            nodata[i] = 1;
            ++set_bits;
        }
    }
    if (set_bits != nodata_count)
        throw Error(ErrorKind::MalformedHeader,
                    bin_path + ": nodata_count disagrees with bitmask (" +
                        std::to_string(nodata_count) + " vs " + std::to_string(set_bits) + ")");
    return {std::move(words), std::move(nodata)};
}

std::string encode_payload(const std::vector<uint32_t>& words, const std::vector<uint8_t>& nodata) {
    std::string data;
    data.reserve(words.size() * 4 + mask_bytes(words.size()));
    for (uint32_t w : words)
        put_u32le(data, w);
    std::string mask(mask_bytes(words.size()), '\0');
    for (size_t i = 0; i < nodata.size(); ++i)
        if (nodata[i])
            mask[i / 8] |= static_cast<char>(1u << (i % 8));
    data += mask;
    return data;
}

std::string header_json(const Header& h) {
    json j;
    j["width"] = h.width;
    j["height"] = h.height;
    j["dtype"] = h.dtype;
    j["geotransform"] = {h.gt.origin_x, h.gt.pixel_width, h.gt.row_rotation,
                         h.gt.origin_y, h.gt.col_rotation, h.gt.pixel_height};
    j["crs"] = h.crs;
    j["nodata_count"] = h.nodata_count;
    return j.dump(2) + "\n";
}

} // namespace

std::string container_base(const std::string& path) {
    if (path.size() > 5 && path.compare(path.size() - 5, 5, ".json") == 0)
        return path.substr(0, path.size() - 5);
    if (path.size() > 4 && path.compare(path.size() - 4, 4, ".bin") == 0)
        return path.substr(0, path.size() - 4);
    return path;
}

ProbabilityRaster read_raster(const std::string& path) {
    const std::string base = container_base(path);
    const Header h = parse_header(base + ".json");
    if (h.dtype != "f32le")
        throw Error(ErrorKind::MalformedHeader, base + ".json: expected dtype f32le, got " + h.dtype);

    const size_t n = static_cast<size_t>(h.width) * h.height;
    auto [words, nodata] = decode_payload(base + ".bin", n, h.nodata_count);

    ProbabilityRaster r;
    r.width = h.width;
    r.height = h.height;
    r.gt = h.gt;
    r.crs = h.crs;
    r.nodata = std::move(nodata);
    r.values.resize(n);
    for (size_t i = 0; i < n; ++i)
        r.values[i] = std::bit_cast<float>(words[i]);
    r.validate();
    return r;
}

void write_raster(const ProbabilityRaster& raster, const std::string& path) {
    raster.validate();
    const std::string base = container_base(path);

    Header h;
    h.width = raster.width;
    h.height = raster.height;
    h.dtype = "f32le";
    h.gt = raster.gt;
    h.crs = raster.crs;
    h.nodata_count = 0;
    for (uint8_t b : raster.nodata)
        h.nodata_count += (b != 0);

    std::vector<uint32_t> words(raster.values.size());
    for (size_t i = 0; i < words.size(); ++i)
        words[i] = std::bit_cast<uint32_t>(raster.values[i]);

    write_file(base + ".json", header_json(h));
    write_file(base + ".bin", encode_payload(words, raster.nodata));
}

LabelRaster read_labels(const std::string& path) {
    const std::string base = container_base(path);
    const Header h = parse_header(base + ".json");
    if (h.dtype != "u32le")
        throw Error(ErrorKind::MalformedHeader, base + ".json: expected dtype u32le, got " + h.dtype);

    const size_t n = static_cast<size_t>(h.width) * h.height;
    auto [words, nodata] = decode_payload(base + ".bin", n, h.nodata_count);

    LabelRaster l;
    l.width = h.width;
    l.height = h.height;
    l.gt = h.gt;
    l.crs = h.crs;
    l.labels = std::move(words);
    // Labels carry no nodata concept; masked pixels read as background.
    for (size_t i = 0; i < n; ++i)
        if (nodata[i])
            l.labels[i] = 0;
    return l;
}

void write_labels(const LabelRaster& labels, const std::string& path) {
    const std::string base = container_base(path);

    Header h;
    h.width = labels.width;
    h.height = labels.height;
    h.dtype = "u32le";
    h.gt = labels.gt;
    h.crs = labels.crs;
    h.nodata_count = 0;

    write_file(base + ".json", header_json(h));
    write_file(base + ".bin", encode_payload(labels.labels, std::vector<uint8_t>(labels.size(), 0)));
}

BinaryMask read_mask(const std::string& path, double threshold) {
    const std::string base = container_base(path);
    const Header h = parse_header(base + ".json");

    BinaryMask m;
    m.width = h.width;
    m.height = h.height;
    m.gt = h.gt;
    m.crs = h.crs;
    m.bits.assign(static_cast<size_t>(h.width) * h.height, 0);

    if (h.dtype == "f32le") {
        const ProbabilityRaster r = read_raster(base);
        for (size_t i = 0; i < r.values.size(); ++i)
            m.bits[i] = (!r.nodata[i] && r.values[i] >= threshold) ? 1 : 0;
    } else {
        const LabelRaster l = read_labels(base);
        for (size_t i = 0; i < l.labels.size(); ++i)
            m.bits[i] = (l.labels[i] != 0) ? 1 : 0;
    }
    return m;
}

void write_mask(const BinaryMask& mask, const std::string& path) {
    ProbabilityRaster r = ProbabilityRaster::zeros_like(mask.width, mask.height, mask.gt, mask.crs);
    for (size_t i = 0; i < mask.bits.size(); ++i)
        r.values[i] = mask.bits[i] ? 1.0f : 0.0f;
    write_raster(r, path);
}

} // namespace fieldmap
