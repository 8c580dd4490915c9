#include "fieldmap/fusion.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

namespace fieldmap {

const FusionReport::Entry* FusionReport::find(uint32_t label) const {
    const auto it = std::lower_bound(entries.begin(), entries.end(), label,
                                     [](const Entry& e, uint32_t l) { return e.label < l; });
    if (it == entries.end() || it->label != label)
        return nullptr;
    return &*it;
}

FusionReport fuse(const LabelRaster& labels, const BinaryMask& wheat_mask, double threshold) {
    require_same_grid(labels, wheat_mask, "fuse");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw Error(ErrorKind::InvalidConfig, "fuse: overlap threshold must be in (0,1)");

    std::map<uint32_t, std::pair<uint64_t, uint64_t>> counts; // label -> (pixels, wheat pixels)
    for (size_t i = 0; i < labels.labels.size(); ++i) {
        const uint32_t lbl = labels.labels[i];
        if (lbl == 0)
            continue;
        auto& [pixels, wheat] = counts[lbl];
        ++pixels;
        wheat += wheat_mask.bits[i] ? 1 : 0;
    }

    FusionReport report;
    report.threshold = threshold;
    report.entries.reserve(counts.size());
    for (const auto& [lbl, pair] : counts) {
        FusionReport::Entry e;
        e.label = lbl;
        e.pixel_count = pair.first;
        e.wheat_pixel_count = pair.second;
        e.wheat_fraction = static_cast<double>(pair.second) / static_cast<double>(pair.first);
        e.is_wheat = e.wheat_fraction > threshold; // strictly more than
        report.entries.push_back(e);
    }
    return report;
}

std::vector<FieldPolygon> annotate(std::vector<FieldPolygon> polygons, const FusionReport& report) {
    for (FieldPolygon& poly : polygons) {
        const FusionReport::Entry* entry = report.find(poly.id);
        if (!entry)
            throw Error(ErrorKind::UnknownLabel,
                        "annotate: label " + std::to_string(poly.id) + " missing from fusion report");
        poly.wheat_fraction = entry->wheat_fraction;
        poly.is_wheat = entry->is_wheat;
    }
    return polygons;
}

std::string fusion_csv(const FusionReport& report) {
    std::string out = "label,pixel_count,wheat_pixel_count,wheat_fraction,is_wheat\n";
    char line[160];
    for (const auto& e : report.entries) {
        std::snprintf(line, sizeof(line), "%u,%llu,%llu,%.17g,%s\n", e.label,
                      static_cast<unsigned long long>(e.pixel_count),
                      static_cast<unsigned long long>(e.wheat_pixel_count), e.wheat_fraction,
                      e.is_wheat ? "true" : "false");
        out += line;
    }
    return out;
}

void write_fusion_csv(const FusionReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    out << fusion_csv(report);
    if (!out)
        throw Error(ErrorKind::IoFailure, "write failed for " + path);
}

} // namespace fieldmap
