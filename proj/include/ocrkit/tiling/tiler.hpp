// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace ocrkit::tiling {

struct PageGeometry {
    int width = 1;  // pixels, >= 1
    int height = 1; // pixels, >= 1
};

/// Half-open pixel rectangle [x0,x1) x [y0,y1).
struct CropRect {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    int width() const { return x1 - x0; }
    int height() const { return y1 - y0; }
    bool operator==(const CropRect&) const = default;
};

/// A grid decomposition of the page: the canvas is the page stretched to
/// (cols*tile_side) x (rows*tile_side); crops are row-major tiles of it. The
/// global view is the whole page resized to one tile.
struct TileLayout {
    int rows = 1;
    int cols = 1;
    int tile_side = 0;
    int resized_width = 0;  // cols * tile_side
    int resized_height = 0; // rows * tile_side
    std::vector<CropRect> crops; // row-major, left-to-right then top-to-bottom
    bool includes_global = true;
};

/// Picks the (rows, cols) grid with rows*cols <= max_tiles minimizing
/// |ln(cols/rows) - ln(width/height)|; ties prefer more tiles, then fewer
/// rows. Throws Error on non-positive tile_side or max_tiles.
TileLayout plan_layout(PageGeometry page, int tile_side, int max_tiles,
                       bool include_global = true);

/// The row-major tile rectangles of the layout's canvas.
std::vector<CropRect> crop_coordinates(const TileLayout& layout);

/// (rows*cols + 1 if the global view is included) * tokens_per_tile.
std::size_t visual_token_estimate(const TileLayout& layout, std::size_t tokens_per_tile);

/// Quarter-turn rotation effect on page geometry: odd turns swap the sides.
PageGeometry apply_rotation(PageGeometry page, int quarter_turns);

} // namespace ocrkit::tiling
