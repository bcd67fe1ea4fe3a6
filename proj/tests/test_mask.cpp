#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "physarum/mask.hpp"
#include "physarum/rng.hpp"
#include "support/reference.hpp"

using namespace physarum;

TEST_CASE("a horizontal segment rasterizes to exactly its row of cells") {
    Polyline2D line{{{0, 0}, {4, 0}}, false};
    const CellMask mask = rasterize(line);
    const CellMask expected = {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}};
    CHECK(mask == expected);
}

TEST_CASE("a simple diagonal rasterizes one cell per step") {
    Polyline2D line{{{0, 0}, {3, 3}}, false};
    const CellMask mask = rasterize(line);
    const CellMask expected = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    CHECK(mask == expected);
}

TEST_CASE("repeated consecutive points are rejected") {
    Polyline2D line{{{0, 0}, {0, 0}, {4, 4}}, false};
    CHECK_THROWS_AS(rasterize(line), std::invalid_argument);
}

TEST_CASE("raster segments are 8-connected, endpoint-exact and minimal") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const Cell a{static_cast<int>(rng.below(64)), static_cast<int>(rng.below(64))};
        const Cell b{static_cast<int>(rng.below(64)), static_cast<int>(rng.below(64))};
        const CellMask seg = raster_segment(a, b);
        REQUIRE(!seg.empty());
        CHECK(seg.front() == a);
        CHECK(seg.back() == b);
        // one cell per major-axis step
        const int expected =
            std::max(std::abs(b.x - a.x), std::abs(b.y - a.y)) + 1;
        CHECK(static_cast<int>(seg.size()) == expected);
        for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
            CHECK(std::abs(seg[i + 1].x - seg[i].x) <= 1);
            CHECK(std::abs(seg[i + 1].y - seg[i].y) <= 1);
        }
    }
}

TEST_CASE("closed polylines include the closing segment") {
    Polyline2D square{{{0, 0}, {4, 0}, {4, 4}, {0, 4}}, true};
    const CellMask mask = rasterize(square);
    std::set<Cell> cells(mask.begin(), mask.end());
    CHECK(cells.count({0, 2}) == 1);  // on the closing edge
    CHECK(cells.size() == 16);        // perimeter of the 5x5 square
}

TEST_CASE("series_to_polyline maps samples into lattice coordinates") {
    SUBCASE("constant series becomes a horizontal polyline") {
        Series1D s{{2.0, 2.0, 2.0, 2.0}, 3.0, 10.0, 50.0, 4.0};
        const Polyline2D p = series_to_polyline(s);
        REQUIRE(p.points.size() == 4);
        for (const Vec2 v : p.points) CHECK(v.y == doctest::Approx(42.0));
        CHECK(p.points[1].x == doctest::Approx(13.0));
        CHECK_FALSE(p.closed);
    }
    SUBCASE("two samples give a single segment") {
        Series1D s{{0.0, 1.0}, 2.0, 0.0, 10.0, 1.0};
        const Polyline2D p = series_to_polyline(s);
        REQUIRE(p.points.size() == 2);
        CHECK(p.points[0].y == doctest::Approx(10.0));
        CHECK(p.points[1].y == doctest::Approx(9.0));
    }
    SUBCASE("a sine's mapped peak-to-trough span is 2A * y_scale") {
        Series1D s;
        const double amp = 3.0;
        // period 20 so the samples land exactly on the peaks
        for (int i = 0; i < 200; ++i)
            s.values.push_back(amp * std::sin(2.0 * std::numbers::pi * i / 20.0));
        s.x_scale = 1.0;
        s.y_origin = 100.0;
        s.y_scale = 7.0;
        const Polyline2D p = series_to_polyline(s);
        double lo = 1e9, hi = -1e9;
        for (const Vec2 v : p.points) {
            lo = std::min(lo, v.y);
            hi = std::max(hi, v.y);
        }
        CHECK(hi - lo == doctest::Approx(2.0 * amp * 7.0).epsilon(1e-3));
    }
    SUBCASE("one sample is an error") {
        Series1D s{{1.0}, 1.0, 0.0, 0.0, 1.0};
        CHECK_THROWS_AS(series_to_polyline(s), std::invalid_argument);
    }
}

TEST_CASE("disc dilation matches the brute-force sweep") {
    SUBCASE("single cell, radius 1 is the 5-cell cross") {
        const CellMask out = dilate_disc({{10, 10}}, 1);
        const CellMask expected = {{10, 9}, {9, 10}, {10, 10}, {11, 10}, {10, 11}};
        CHECK(out == expected);
    }
    SUBCASE("straight line dilated by r spans a band of width 2r+1") {
        CellMask line;
        for (int x = 5; x <= 20; ++x) line.push_back({x, 10});
        for (int r : {1, 2, 3}) {
            const CellMask band = dilate_disc(line, r);
            std::set<Cell> cells(band.begin(), band.end());
            for (int x = 5; x <= 20; ++x)
                for (int dy = -r; dy <= r; ++dy) CHECK(cells.count({x, 10 + dy}) == 1);
            CHECK(cells.count({12, 10 + r + 1}) == 0);
        }
    }
    SUBCASE("random masks agree with the reference dilation") {
        Rng rng(5);
        for (int trial = 0; trial < 10; ++trial) {
            CellMask mask;
            for (int i = 0; i < 12; ++i)
                mask.push_back({static_cast<int>(rng.below(20)), static_cast<int>(rng.below(20))});
            mask = sorted_unique(std::move(mask));
            const int r = 1 + static_cast<int>(rng.below(3));
            CellMask expected = reference::brute_dilate(mask, r);
            std::sort(expected.begin(), expected.end());
            CHECK(dilate_disc(mask, r) == expected);
        }
    }
}

TEST_CASE("rectilinear preprocessing steps at segment midpoints") {
    SUBCASE("collinear horizontal input is returned unchanged") {
        Polyline2D flat{{{0, 5}, {4, 5}, {9, 5}}, false};
        const Polyline2D out = rectilinear_preprocess(flat);
        CHECK(out.points == flat.points);
    }
    SUBCASE("a single rising segment becomes one riser at the midpoint") {
        Polyline2D seg{{{0, 0}, {10, 6}}, false};
        const Polyline2D out = rectilinear_preprocess(seg);
        const std::vector<Vec2> expected = {{0, 0}, {5, 0}, {5, 6}, {10, 6}};
        CHECK(out.points == expected);
    }
    SUBCASE("an M-shaped polyline grows one riser per non-flat segment") {
        Polyline2D m{{{0, 30}, {10, 5}, {20, 20}, {30, 5}, {40, 30}}, false};
        const Polyline2D out = rectilinear_preprocess(m);
        // 5 original vertices + 2 per riser
        CHECK(out.points.size() == 13);
        // all original vertices preserved exactly
        for (const Vec2 v : m.points)
            CHECK(std::count(out.points.begin(), out.points.end(), v) == 1);
        // only axis-parallel segments, and only right angles
        for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
            const Vec2 a = out.points[i];
            const Vec2 b = out.points[i + 1];
            CHECK((a.x == b.x || a.y == b.y));
        }
        for (std::size_t i = 0; i + 2 < out.points.size(); ++i) {
            const Vec2 d1 = out.points[i + 1] - out.points[i];
            const Vec2 d2 = out.points[i + 2] - out.points[i + 1];
            CHECK(dot(d1, d2) >= -1e-12);  // never turns back on itself
        }
    }
    SUBCASE("non-monotone input is rejected") {
        Polyline2D loop{{{0, 0}, {10, 5}, {5, 10}}, false};
        CHECK_THROWS_AS(rectilinear_preprocess(loop), std::invalid_argument);
    }
}
