#include "fieldmap/threshold.hpp"

namespace fieldmap {

namespace {

void check_threshold(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw Error(ErrorKind::ThresholdOutOfRange, "threshold must be in [0,1]");
}

} // namespace

ProbabilityRaster gradual_threshold(const ProbabilityRaster& r, double t) {
    check_threshold(t);
    ProbabilityRaster out = r;
    const float ft = static_cast<float>(t);
    for (size_t i = 0; i < out.values.size(); ++i) {
        if (out.nodata[i]) {
            out.values[i] = 0.0f;
            continue;
        }
        if (out.values[i] < ft)
            out.values[i] = 0.0f;
    }
    return out;
}

ProbabilityRaster basins_mask(const ProbabilityRaster& gradual_fields,
                              const ProbabilityRaster& gradual_boundaries) {
    require_same_grid(gradual_fields, gradual_boundaries, "basins_mask");
    ProbabilityRaster out = ProbabilityRaster::zeros_like(gradual_fields.width,
                                                          gradual_fields.height,
                                                          gradual_fields.gt, gradual_fields.crs);
    for (size_t i = 0; i < out.values.size(); ++i) {
        if (gradual_fields.nodata[i] || gradual_boundaries.nodata[i]) {
            out.nodata[i] = 1;
            continue;
        }
        out.values[i] = gradual_fields.values[i] * (1.0f - gradual_boundaries.values[i]);
    }
    return out;
}

BinaryMask argmax_mask(const std::vector<const ProbabilityRaster*>& class_scores,
                       size_t target_class) {
    if (class_scores.size() < 2)
        throw Error(ErrorKind::BadClassIndex, "argmax needs at least two classes");
    if (target_class >= class_scores.size())
        throw Error(ErrorKind::BadClassIndex,
                    "target class " + std::to_string(target_class) + " out of range");
    const ProbabilityRaster& first = *class_scores[0];
    for (size_t c = 1; c < class_scores.size(); ++c)
        require_same_grid(first, *class_scores[c], "argmax_mask");

    BinaryMask out = BinaryMask::falses_like(first.width, first.height, first.gt, first.crs);
    for (size_t i = 0; i < out.bits.size(); ++i) {
        bool valid = true;
        size_t winner = 0;
        float best = class_scores[0]->values[i];
        for (size_t c = 0; c < class_scores.size(); ++c) {
            if (class_scores[c]->nodata[i]) {
                valid = false;
                break;
            }
            // strict > keeps the lowest index on ties
            if (c > 0 && class_scores[c]->values[i] > best) {
                best = class_scores[c]->values[i];
                winner = c;
            }
        }
        out.bits[i] = (valid && winner == target_class) ? 1 : 0;
    }
    return out;
}

BinaryMask binarize(const ProbabilityRaster& r, double t) {
    check_threshold(t);
    BinaryMask out = BinaryMask::falses_like(r.width, r.height, r.gt, r.crs);
    const float ft = static_cast<float>(t);
    for (size_t i = 0; i < out.bits.size(); ++i)
        out.bits[i] = (!r.nodata[i] && r.values[i] >= ft) ? 1 : 0;
    return out;
}

} // namespace fieldmap
