#pragma once

#include "fieldmap/grid.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fieldmap {

/// One year's rasterized wheat-field mask. field_count may be preset from a
/// fused polygon set; when absent it is derived by connected components.
struct YearMask {
    int year = 0;
    BinaryMask mask;
    std::optional<uint64_t> field_count;
};

struct YearSummary {
    int year = 0;
    uint64_t pixel_count = 0;
    double area = 0.0; // map-units^2
    uint64_t field_count = 0;
};

/// Area flows between two years. Pixel counts are the source of truth; the
/// areas are count * pixel_area so the conservation identities
///   persisted + lost   == total of year_from
///   persisted + gained == total of year_to
/// hold exactly in pixel accounting.
struct TransitionFlow {
    int year_from = 0;
    int year_to = 0;
    uint64_t gained_px = 0;
    uint64_t persisted_px = 0;
    uint64_t lost_px = 0;
    double gained_area = 0.0;
    double persisted_area = 0.0;
    double lost_area = 0.0;
};

YearSummary year_summary(const YearMask& m, int connectivity = 4);

/// gained = area(!a & b), persisted = area(a & b), lost = area(a & !b).
/// Requires a.year < b.year and matching grids.
TransitionFlow transition(const YearMask& a, const YearMask& b);

/// One flow per ordered year pair whose difference is in `gaps`, sorted by
/// (gap, year_from). Needs at least two years with distinct year values.
std::vector<TransitionFlow> flow_table(const std::vector<YearMask>& masks,
                                       const std::vector<int>& gaps);

// CSV serialization. Areas convert to km^2 (area * 1e-6) at this point and
// only here; a geographic CRS on the masks makes these throw GeographicCrs.
std::string flow_csv(const std::vector<TransitionFlow>& flows);
std::string summary_csv(const std::vector<YearSummary>& summaries);

} // namespace fieldmap
