#include "fieldmap/change.hpp"

#include "fieldmap/watershed.hpp"

#include <algorithm>
#include <cstdio>

namespace fieldmap {

namespace {

void require_projected(const BinaryMask& mask, const char* context) {
    if (crs_is_geographic(mask.crs))
        throw Error(ErrorKind::GeographicCrs,
                    std::string(context) + ": area accounting needs a projected CRS, got '" +
                        mask.crs + "'");
}

} // namespace

YearSummary year_summary(const YearMask& m, int connectivity) {
    require_projected(m.mask, "year_summary");
    YearSummary s;
    s.year = m.year;
    s.pixel_count = m.mask.count_true();
    s.area = static_cast<double>(s.pixel_count) * pixel_area(m.mask.gt);
    if (m.field_count)
        s.field_count = *m.field_count;
    else
        s.field_count = connected_components(m.mask, connectivity).max_label();
    return s;
}

TransitionFlow transition(const YearMask& a, const YearMask& b) {
    require_same_grid(a.mask, b.mask, "transition");
    require_projected(a.mask, "transition");
    if (!(a.year < b.year))
        throw Error(ErrorKind::YearOrder, "transition: year_from must precede year_to");

    TransitionFlow flow;
    flow.year_from = a.year;
    flow.year_to = b.year;
    for (size_t i = 0; i < a.mask.bits.size(); ++i) {
        const bool pa = a.mask.bits[i] != 0;
        const bool pb = b.mask.bits[i] != 0;
        if (pa && pb)
            ++flow.persisted_px;
        else if (pa)
            ++flow.lost_px;
        else if (pb)
            ++flow.gained_px;
    }
    const double px_area = pixel_area(a.mask.gt);
    flow.gained_area = static_cast<double>(flow.gained_px) * px_area;
    flow.persisted_area = static_cast<double>(flow.persisted_px) * px_area;
    flow.lost_area = static_cast<double>(flow.lost_px) * px_area;
    return flow;
}

std::vector<TransitionFlow> flow_table(const std::vector<YearMask>& masks,
                                       const std::vector<int>& gaps) {
    if (masks.size() < 2)
        throw Error(ErrorKind::InsufficientYears, "flow_table needs at least two years");

    std::vector<const YearMask*> sorted;
    sorted.reserve(masks.size());
    for (const YearMask& m : masks)
        sorted.push_back(&m);
    std::sort(sorted.begin(), sorted.end(),
              [](const YearMask* a, const YearMask* b) { return a->year < b->year; });
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i]->year == sorted[i - 1]->year)
            throw Error(ErrorKind::YearOrder,
                        "flow_table: duplicate year " + std::to_string(sorted[i]->year));

    std::vector<int> unique_gaps = gaps;
    std::sort(unique_gaps.begin(), unique_gaps.end());
    unique_gaps.erase(std::unique(unique_gaps.begin(), unique_gaps.end()), unique_gaps.end());
    for (int g : unique_gaps)
        if (g <= 0)
            throw Error(ErrorKind::InvalidConfig, "flow_table: gaps must be positive");

    std::vector<TransitionFlow> flows;
    for (int gap : unique_gaps)
        for (const YearMask* from : sorted)
            for (const YearMask* to : sorted)
                if (to->year - from->year == gap)
                    flows.push_back(transition(*from, *to));
    return flows;
}

std::string flow_csv(const std::vector<TransitionFlow>& flows) {
    std::string out = "year_from,year_to,gap,gained_km2,persisted_km2,lost_km2\n";
    char line[240];
    for (const TransitionFlow& f : flows) {
        std::snprintf(line, sizeof(line), "%d,%d,%d,%.17g,%.17g,%.17g\n", f.year_from, f.year_to,
                      f.year_to - f.year_from, f.gained_area * 1e-6, f.persisted_area * 1e-6,
                      f.lost_area * 1e-6);
        out += line;
    }
    return out;
}

std::string summary_csv(const std::vector<YearSummary>& summaries) {
    std::string out = "year,area_km2,field_count\n";
    char line[160];
    for (const YearSummary& s : summaries) {
        std::snprintf(line, sizeof(line), "%d,%.17g,%llu\n", s.year, s.area * 1e-6,
                      static_cast<unsigned long long>(s.field_count));
        out += line;
    }
    return out;
}

} // namespace fieldmap
