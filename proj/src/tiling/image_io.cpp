// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/tiling/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "ocrkit/error.hpp"

namespace ocrkit::tiling {

TileLayout write_crops(const std::filesystem::path& image, int tile_side, int max_tiles,
                       int quarter_turns, const std::filesystem::path& out_dir) {
    cv::Mat page = cv::imread(image.string(), cv::IMREAD_COLOR);
    if (page.empty()) {
        throw Error("cannot read image: " + image.string());
    }
    const int turns = ((quarter_turns % 4) + 4) % 4;
    if (turns == 1) {
        cv::rotate(page, page, cv::ROTATE_90_CLOCKWISE);
    } else if (turns == 2) {
        cv::rotate(page, page, cv::ROTATE_180);
    } else if (turns == 3) {
        cv::rotate(page, page, cv::ROTATE_90_COUNTERCLOCKWISE);
    }

    const TileLayout layout =
        plan_layout({page.cols, page.rows}, tile_side, max_tiles, /*include_global=*/true);

    std::filesystem::create_directories(out_dir);
    cv::Mat canvas;
    cv::resize(page, canvas, cv::Size(layout.resized_width, layout.resized_height), 0, 0,
               cv::INTER_AREA);
    for (int r = 0; r < layout.rows; ++r) {
        for (int c = 0; c < layout.cols; ++c) {
            const CropRect& rect = layout.crops[static_cast<std::size_t>(r) * layout.cols + c];
            cv::Mat crop = canvas(cv::Rect(rect.x0, rect.y0, rect.width(), rect.height()));
            const auto name = std::to_string(r) + "_" + std::to_string(c) + ".png";
            if (!cv::imwrite((out_dir / name).string(), crop)) {
                throw Error("cannot write crop: " + (out_dir / name).string());
            }
        }
    }
    if (layout.includes_global) {
        cv::Mat global;
        cv::resize(page, global, cv::Size(tile_side, tile_side), 0, 0, cv::INTER_AREA);
        if (!cv::imwrite((out_dir / "global.png").string(), global)) {
            throw Error("cannot write global view");
        }
    }
    return layout;
}

} // namespace ocrkit::tiling
