#include "fieldmap/metrics.hpp"

#include <json.hpp>

#include <cstdio>

namespace fieldmap {

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& truth) {
    require_same_grid(pred, truth, "confusion");
    ConfusionCounts c;
    for (size_t i = 0; i < pred.bits.size(); ++i) {
        const bool p = pred.bits[i] != 0;
        const bool t = truth.bits[i] != 0;
        if (p && t)
            ++c.tp;
        else if (p && !t)
            ++c.fp;
        else if (!p && t)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

MetricsReport report(const ConfusionCounts& c) {
    if (c.total() == 0)
        throw Error(ErrorKind::EmptyInput, "metrics: no pixels to score");

    MetricsReport r;
    r.counts = c;
    const double tp = static_cast<double>(c.tp);

    auto ratio = [](double num, uint64_t den, double& out, bool& defined) {
        defined = den != 0;
        out = defined ? num / static_cast<double>(den) : 0.0;
    };
    ratio(tp, c.tp + c.fp + c.fn, r.iou, r.iou_defined);
    ratio(tp, c.tp + c.fp, r.precision, r.precision_defined);
    ratio(tp, c.tp + c.fn, r.recall, r.recall_defined);
    // 2tp/(2tp+fp+fn) == harmonic mean of precision and recall when both exist
    ratio(2.0 * tp, 2 * c.tp + c.fp + c.fn, r.f1, r.f1_defined);
    r.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    return r;
}

std::string metrics_csv_header() {
    return "method,iou,precision,recall,f1,accuracy,tp,fp,fn,tn\n";
}

std::string metrics_csv_row(const std::string& method, const MetricsReport& r) {
    char line[320];
    std::snprintf(line, sizeof(line), "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%llu,%llu,%llu,%llu\n",
                  method.c_str(), r.iou, r.precision, r.recall, r.f1, r.accuracy,
                  static_cast<unsigned long long>(r.counts.tp),
                  static_cast<unsigned long long>(r.counts.fp),
                  static_cast<unsigned long long>(r.counts.fn),
                  static_cast<unsigned long long>(r.counts.tn));
    return line;
}

std::string metrics_json(const std::string& method, const MetricsReport& r) {
    nlohmann::json j;
    j["method"] = method;
    j["iou"] = r.iou;
    j["precision"] = r.precision;
    j["recall"] = r.recall;
    j["f1"] = r.f1;
    j["accuracy"] = r.accuracy;
    j["tp"] = r.counts.tp;
    j["fp"] = r.counts.fp;
    j["fn"] = r.counts.fn;
    j["tn"] = r.counts.tn;
    nlohmann::json undefined = nlohmann::json::array();
    if (!r.iou_defined)
        undefined.push_back("iou");
    if (!r.precision_defined)
        undefined.push_back("precision");
    if (!r.recall_defined)
        undefined.push_back("recall");
    if (!r.f1_defined)
        undefined.push_back("f1");
    j["undefined"] = undefined;
    return j.dump(2) + "\n";
}

} // namespace fieldmap
