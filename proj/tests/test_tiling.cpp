// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "ocrkit/error.hpp"
#include "ocrkit/tiling/tiler.hpp"

using namespace ocrkit;
using tiling::CropRect;
using tiling::PageGeometry;
using tiling::TileLayout;

namespace {

// Independent selection: enumerate every grid, sort by the stated objective
// and tie-breaks, take the front.
std::pair<int, int> oracle_grid(PageGeometry page, int max_tiles) {
    struct Candidate {
        int rows, cols;
        double err;
    };
    std::vector<Candidate> all;
    const double target = std::log(static_cast<double>(page.width) / page.height);
    for (int r = 1; r <= max_tiles; ++r) {
        for (int c = 1; r * c <= max_tiles; ++c) {
            all.push_back({r, c, std::abs(std::log(static_cast<double>(c) / r) - target)});
        }
    }
    std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
        if (a.err != b.err) return a.err < b.err;
        if (a.rows * a.cols != b.rows * b.cols) return a.rows * a.cols > b.rows * b.cols;
        return a.rows < b.rows;
    });
    return {all.front().rows, all.front().cols};
}

bool disjoint(const CropRect& a, const CropRect& b) {
    return a.x1 <= b.x0 || b.x1 <= a.x0 || a.y1 <= b.y0 || b.y1 <= a.y0;
}

void check_partition(const TileLayout& layout) {
    long long area = 0;
    for (const CropRect& r : layout.crops) {
        CHECK(r.width() == layout.tile_side);
        CHECK(r.height() == layout.tile_side);
        CHECK(r.x0 >= 0);
        CHECK(r.y0 >= 0);
        CHECK(r.x1 <= layout.resized_width);
        CHECK(r.y1 <= layout.resized_height);
        area += static_cast<long long>(r.width()) * r.height();
    }
    CHECK(area == static_cast<long long>(layout.resized_width) * layout.resized_height);
    for (std::size_t i = 0; i < layout.crops.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.crops.size(); ++j) {
            CHECK(disjoint(layout.crops[i], layout.crops[j]));
        }
    }
}

} // namespace

TEST_CASE("plan_layout: square page fills the budget with a square grid") {
    const auto layout = tiling::plan_layout({1024, 1024}, 336, 9);
    CHECK(layout.rows == 3);
    CHECK(layout.cols == 3);
    CHECK(layout.resized_width == 1008);
    CHECK(layout.resized_height == 1008);
    CHECK(layout.includes_global);
    CHECK(layout.crops.size() == 9);
}

TEST_CASE("plan_layout: 2:1 page picks 2 rows x 4 cols under budget 8") {
    const auto layout = tiling::plan_layout({2048, 1024}, 336, 8);
    CHECK(layout.rows == 2);
    CHECK(layout.cols == 4);
}

TEST_CASE("plan_layout: budget 1 forces the degenerate layout") {
    const auto layout = tiling::plan_layout({700, 700}, 336, 1);
    CHECK(layout.rows == 1);
    CHECK(layout.cols == 1);
    CHECK(layout.crops.size() == 1);
    CHECK(layout.includes_global); // global still emitted so token accounting is uniform
}

TEST_CASE("plan_layout: argument validation") {
    CHECK_THROWS_AS(tiling::plan_layout({0, 10}, 336, 9), Error);
    CHECK_THROWS_AS(tiling::plan_layout({10, 10}, 0, 9), Error);
    CHECK_THROWS_AS(tiling::plan_layout({10, 10}, 336, 0), Error);
}

TEST_CASE("crop_coordinates: row-major tiles") {
    SUBCASE("1x1") {
        const auto layout = tiling::plan_layout({100, 100}, 336, 1);
        const auto crops = tiling::crop_coordinates(layout);
        REQUIRE(crops.size() == 1);
        CHECK(crops[0] == CropRect{0, 0, 336, 336});
    }
    SUBCASE("2x2 partitions 672x672") {
        const auto layout = tiling::plan_layout({500, 500}, 336, 4);
        REQUIRE(layout.rows == 2);
        REQUIRE(layout.cols == 2);
        const auto crops = tiling::crop_coordinates(layout);
        REQUIRE(crops.size() == 4);
        CHECK(crops[0] == CropRect{0, 0, 336, 336});
        CHECK(crops[1] == CropRect{336, 0, 672, 336});  // left-to-right first
        CHECK(crops[2] == CropRect{0, 336, 336, 672});
        CHECK(crops[3] == CropRect{336, 336, 672, 672});
        check_partition(layout);
    }
    SUBCASE("3x3 area bookkeeping") {
        const auto layout = tiling::plan_layout({1024, 1024}, 336, 9);
        long long area = 0;
        for (const auto& r : tiling::crop_coordinates(layout)) {
            area += static_cast<long long>(r.width()) * r.height();
        }
        CHECK(area == 1008LL * 1008LL);
    }
}

TEST_CASE("visual_token_estimate") {
    const auto nine = tiling::plan_layout({1024, 1024}, 336, 9);
    CHECK(tiling::visual_token_estimate(nine, 576) == 5760); // 9 crops + global

    const auto one = tiling::plan_layout({10, 10}, 336, 1);
    CHECK(tiling::visual_token_estimate(one, 100) == 200);

    auto no_global = tiling::plan_layout({500, 500}, 336, 4, /*include_global=*/false);
    CHECK(tiling::visual_token_estimate(no_global, 100) == 400);

    CHECK_THROWS_AS(tiling::visual_token_estimate(nine, 0), Error);
}

TEST_CASE("apply_rotation") {
    CHECK(tiling::apply_rotation({1000, 600}, 1).width == 600);
    CHECK(tiling::apply_rotation({1000, 600}, 1).height == 1000);
    CHECK(tiling::apply_rotation({1000, 600}, 2).width == 1000);
    CHECK(tiling::apply_rotation({1000, 600}, 2).height == 600);
    CHECK(tiling::apply_rotation({777, 111}, 0).width == 777);
    CHECK(tiling::apply_rotation({777, 111}, 3).width == 111);
    CHECK(tiling::apply_rotation({777, 111}, -1).width == 111); // normalized mod 4
}

TEST_CASE("plan_layout: random geometries match exhaustive enumeration") {
    std::mt19937 rng(20240810);
    std::uniform_int_distribution<int> dim(64, 8192);
    std::uniform_int_distribution<int> budget(1, 16);
    for (int iter = 0; iter < 500; ++iter) {
        const PageGeometry page{dim(rng), dim(rng)};
        const int max_tiles = budget(rng);
        const auto layout = tiling::plan_layout(page, 336, max_tiles);
        const auto [rows, cols] = oracle_grid(page, max_tiles);
        CHECK(layout.rows == rows);
        CHECK(layout.cols == cols);
        CHECK(layout.rows * layout.cols <= max_tiles);
        check_partition(layout);
    }
}

TEST_CASE("plan_layout: larger budgets never worsen the aspect error") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dim(64, 8192);
    for (int iter = 0; iter < 100; ++iter) {
        const PageGeometry page{dim(rng), dim(rng)};
        const double target = std::log(static_cast<double>(page.width) / page.height);
        double prev_err = std::numeric_limits<double>::infinity();
        for (int max_tiles = 1; max_tiles <= 12; ++max_tiles) {
            const auto layout = tiling::plan_layout(page, 336, max_tiles);
            const double err =
                std::abs(std::log(static_cast<double>(layout.cols) / layout.rows) - target);
            CHECK(err <= prev_err + 1e-12);
            prev_err = err;
        }
    }
}
