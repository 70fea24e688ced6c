// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include "ocrkit/tiling/tiler.hpp"

namespace ocrkit::tiling {

/// Reads `image`, plans a layout for its geometry (after `quarter_turns`
/// rotation), stretches it to the layout canvas, and writes the crops as
/// <row>_<col>.png plus global.png into `out_dir`. Returns the layout.
/// Available only when the toolkit is built with image support.
TileLayout write_crops(const std::filesystem::path& image, int tile_side, int max_tiles,
                       int quarter_turns, const std::filesystem::path& out_dir);

} // namespace ocrkit::tiling
