// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ocrkit/text/segment.hpp"

namespace ocrkit::metrics {

/// Levenshtein distance with unit insert/delete/substitute costs over interned
/// token ids. Two-row dynamic program, O(|a|*|b|) time, O(min) memory.
std::size_t edit_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// edit_distance / max(|a|, |b|); 0 when both sequences are empty.
double normalized_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Maps token strings to dense ids so the distance kernel compares integers.
class TokenInterner {
public:
    std::uint32_t id(std::string_view token);
    std::vector<std::uint32_t> intern(std::span<const std::string_view> tokens);

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const {
            return std::hash<std::string_view>{}(s);
        }
    };
    std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> map_;
};

/// Segments both (already normalized) strings at `unit` and computes the
/// distance over the token sequences. A shared interner is created per call.
std::size_t edit_distance(std::string_view a, std::string_view b, text::SegmentUnit unit);
double normalized_distance(std::string_view a, std::string_view b, text::SegmentUnit unit);

std::vector<std::uint32_t> tokenize_ids(std::string_view normalized, text::SegmentUnit unit,
                                        TokenInterner& interner);

} // namespace ocrkit::metrics
