#pragma once

#include "fieldmap/grid.hpp"

#include <cstdint>
#include <string>

namespace fieldmap {

struct ConfusionCounts {
    uint64_t tp = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;
    uint64_t tn = 0;

    uint64_t total() const { return tp + fp + fn + tn; }

    bool operator==(const ConfusionCounts&) const = default;
};

/// Pixel-level metric suite. Ratios with a zero denominator are reported as
/// 0 with the matching *_defined flag cleared; serialized output never
/// carries NaN. When tn == 0, accuracy degenerates to IoU; both are emitted
/// so the distinction stays visible.
struct MetricsReport {
    double iou = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    bool iou_defined = false;
    bool precision_defined = false;
    bool recall_defined = false;
    bool f1_defined = false;
    ConfusionCounts counts;
};

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth);

/// iou = tp/(tp+fp+fn), precision = tp/(tp+fp), recall = tp/(tp+fn),
/// f1 = 2tp/(2tp+fp+fn) (the harmonic mean of precision and recall whenever
/// both are defined), accuracy = (tp+tn)/total. Throws EmptyInput when every
/// count is zero.
MetricsReport report(const ConfusionCounts& c);

/// One CSV row per call: method,iou,precision,recall,f1,accuracy,tp,fp,fn,tn.
std::string metrics_csv_header();
std::string metrics_csv_row(const std::string& method, const MetricsReport& r);
std::string metrics_json(const std::string& method, const MetricsReport& r);

} // namespace fieldmap
