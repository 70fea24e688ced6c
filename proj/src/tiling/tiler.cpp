// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/tiling/tiler.hpp"

#include <cmath>

#include "ocrkit/error.hpp"

namespace ocrkit::tiling {

TileLayout plan_layout(PageGeometry page, int tile_side, int max_tiles, bool include_global) {
    if (page.width < 1 || page.height < 1) {
        throw Error("page dimensions must be positive");
    }
    if (tile_side < 1) {
        throw Error("tile side must be positive");
    }
    if (max_tiles < 1) {
        throw Error("tile budget must be positive");
    }

    const double target = std::log(static_cast<double>(page.width) /
                                   static_cast<double>(page.height));
    int best_rows = 1, best_cols = 1;
    double best_err = std::abs(std::log(1.0) - target);
    for (int rows = 1; rows <= max_tiles; ++rows) {
        for (int cols = 1; rows * cols <= max_tiles; ++cols) {
            const double err =
                std::abs(std::log(static_cast<double>(cols) / static_cast<double>(rows)) - target);
            const bool better =
                err < best_err ||
                (err == best_err && (rows * cols > best_rows * best_cols ||
                                     (rows * cols == best_rows * best_cols && rows < best_rows)));
            if (better) {
                best_err = err;
                best_rows = rows;
                best_cols = cols;
            }
        }
    }

    TileLayout layout;
    layout.rows = best_rows;
    layout.cols = best_cols;
    layout.tile_side = tile_side;
    layout.resized_width = best_cols * tile_side;
    layout.resized_height = best_rows * tile_side;
    layout.includes_global = include_global;
    layout.crops.reserve(static_cast<std::size_t>(best_rows) * best_cols);
    for (int r = 0; r < best_rows; ++r) {
        for (int c = 0; c < best_cols; ++c) {
            layout.crops.push_back(
                {c * tile_side, r * tile_side, (c + 1) * tile_side, (r + 1) * tile_side});
        }
    }
    return layout;
}

std::vector<CropRect> crop_coordinates(const TileLayout& layout) {
    return layout.crops;
}

std::size_t visual_token_estimate(const TileLayout& layout, std::size_t tokens_per_tile) {
    if (tokens_per_tile < 1) {
        throw Error("tokens per tile must be positive");
    }
    const std::size_t tiles = static_cast<std::size_t>(layout.rows) * layout.cols +
                              (layout.includes_global ? 1 : 0);
    return tiles * tokens_per_tile;
}

PageGeometry apply_rotation(PageGeometry page, int quarter_turns) {
    const int turns = ((quarter_turns % 4) + 4) % 4;
    if (turns % 2 == 1) {
        return {page.height, page.width};
    }
    return page;
}

} // namespace ocrkit::tiling
