#include "fieldmap/change.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <random>

using namespace fieldmap;
using namespace testutil;

namespace {

YearMask year(int y, BinaryMask m) {
    YearMask ym;
    ym.year = y;
    ym.mask = std::move(m);
    return ym;
}

BinaryMask random_mask(std::mt19937_64& rng, int w, int h) {
    BinaryMask m = mask(w, h, std::vector<uint8_t>(static_cast<size_t>(w) * h, 0));
    for (auto& b : m.bits)
        b = rng() % 2;
    return m;
}

} // namespace

TEST_CASE("year summary counts area and fields") {
    const YearMask empty = year(2019, mask(4, 4, std::vector<uint8_t>(16, 0)));
    YearSummary s = year_summary(empty);
    CHECK(s.pixel_count == 0);
    CHECK(s.area == 0.0);
    CHECK(s.field_count == 0);

    // two disjoint 10-pixel blobs on 100 m^2 pixels: rows 0 and 2 of a 10x3 grid
    BinaryMask blobs = mask(10, 3, std::vector<uint8_t>(30, 0));
    for (int c = 0; c < 10; ++c) {
        blobs.bits[c] = 1;
        blobs.bits[20 + c] = 1;
    }
    s = year_summary(year(2020, blobs));
    CHECK(s.pixel_count == 20);
    CHECK(s.area == doctest::Approx(2000.0));
    CHECK(s.field_count == 2);

    // a blob touching the raster edge is still one field
    BinaryMask corner = mask(3, 3, {1, 1, 0, 1, 0, 0, 0, 0, 0});
    CHECK(year_summary(year(2021, corner)).field_count == 1);
}

TEST_CASE("a preset field count wins over connected components") {
    YearMask ym = year(2019, mask(2, 1, {1, 1}));
    ym.field_count = 17; // e.g. taken from the fused polygon set
    CHECK(year_summary(ym).field_count == 17);
}

TEST_CASE("area accounting refuses geographic CRS") {
    BinaryMask m = mask(2, 1, {1, 1});
    m.crs = "EPSG:4326";
    try {
        year_summary(year(2019, m));
        FAIL("expected GeographicCrs");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GeographicCrs);
    }
}

TEST_CASE("transition splits area into gained, persisted and lost") {
    const BinaryMask a = mask(4, 1, {0, 1, 1, 0}); // pixels 1,2
    const BinaryMask b = mask(4, 1, {0, 0, 1, 1}); // pixels 2,3
    const TransitionFlow f = transition(year(2019, a), year(2020, b));
    CHECK(f.gained_px == 1);
    CHECK(f.persisted_px == 1);
    CHECK(f.lost_px == 1);
    CHECK(f.gained_area == doctest::Approx(100.0));
    CHECK(f.persisted_area == doctest::Approx(100.0));
    CHECK(f.lost_area == doctest::Approx(100.0));

    // identical years persist everything
    const TransitionFlow same = transition(year(2019, a), year(2020, a));
    CHECK(same.gained_px == 0);
    CHECK(same.lost_px == 0);
    CHECK(same.persisted_px == 2);

    // an empty start year only gains
    const TransitionFlow from_empty =
        transition(year(2019, mask(4, 1, {0, 0, 0, 0})), year(2020, b));
    CHECK(from_empty.gained_px == 2);
    CHECK(from_empty.persisted_px == 0);
    CHECK(from_empty.lost_px == 0);
}

TEST_CASE("transition validates year order and grids") {
    const BinaryMask m = mask(2, 1, {1, 0});
    try {
        transition(year(2020, m), year(2019, m));
        FAIL("expected YearOrder");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::YearOrder);
    }
    CHECK_THROWS_AS(transition(year(2019, m), year(2020, mask(3, 1, {1, 0, 1}))), Error);
}

TEST_CASE("conservation, symmetry and monotonicity hold on random masks") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 50; ++trial) {
        const BinaryMask a = random_mask(rng, 9, 7);
        const BinaryMask b = random_mask(rng, 9, 7);
        const TransitionFlow f = transition(year(1, a), year(2, b));

        CHECK(f.persisted_px + f.lost_px == a.count_true());
        CHECK(f.persisted_px + f.gained_px == b.count_true());

        // swapping the masks swaps gained and lost
        const TransitionFlow rev = transition(year(1, b), year(2, a));
        CHECK(f.gained_px == rev.lost_px);
        CHECK(f.lost_px == rev.gained_px);
        CHECK(f.persisted_px == rev.persisted_px);

        // adding wheat pixels to b never decreases gained or persisted
        BinaryMask grown = b;
        for (int k = 0; k < 5; ++k)
            grown.bits[rng() % grown.bits.size()] = 1;
        const TransitionFlow g = transition(year(1, a), year(2, grown));
        CHECK(g.gained_px >= f.gained_px);
        CHECK(g.persisted_px >= f.persisted_px);
    }
}

TEST_CASE("flow table enumerates year pairs by gap") {
    const BinaryMask m = mask(2, 1, {1, 0});
    std::vector<YearMask> years;
    years.push_back(year(2019, m));
    years.push_back(year(2020, m));

    auto flows = flow_table(years, {1});
    REQUIRE(flows.size() == 1);
    CHECK(flows[0].year_from == 2019);
    CHECK(flows[0].year_to == 2020);

    years.push_back(year(2021, m));
    flows = flow_table(years, {1, 2});
    REQUIRE(flows.size() == 3); // 19->20, 20->21, 19->21
    CHECK(flows[0].year_to - flows[0].year_from == 1);
    CHECK(flows[1].year_to - flows[1].year_from == 1);
    CHECK(flows[2].year_to - flows[2].year_from == 2);

    CHECK(flow_table(years, {}).empty());

    try {
        flow_table({year(2019, m)}, {1});
        FAIL("expected InsufficientYears");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InsufficientYears);
    }

    std::vector<YearMask> dup;
    dup.push_back(year(2019, m));
    dup.push_back(year(2019, m));
    CHECK_THROWS_AS(flow_table(dup, {1}), Error);
    CHECK_THROWS_AS(flow_table(years, {0}), Error);
}

TEST_CASE("CSV output reports km2 as count * pixel_area * 1e-6") {
    BinaryMask m = mask(5, 4, std::vector<uint8_t>(20, 0));
    for (int i = 0; i < 7; ++i)
        m.bits[i] = 1;
    const YearSummary s = year_summary(year(2019, m));
    const std::string csv = summary_csv({s});
    const double expected = 7.0 * pixel_area(m.gt) * 1e-6;
    char wanted[64];
    std::snprintf(wanted, sizeof(wanted), "2019,%.17g,1\n", expected);
    CHECK(csv == std::string("year,area_km2,field_count\n") + wanted);

    const TransitionFlow f = transition(year(2019, m), year(2020, m));
    const std::string fcsv = flow_csv({f});
    CHECK(fcsv.find("year_from,year_to,gap,gained_km2,persisted_km2,lost_km2\n") == 0);
    CHECK(fcsv.find("2019,2020,1,0,") != std::string::npos);
}
