// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocrkit/text/normalize.hpp"

namespace ocrkit::text {

/// Comparison units for edit-distance metrics. `codepoint` is the default
/// character unit; `grapheme` follows Unicode extended grapheme clusters,
/// which matters for Indic conjuncts and combining marks.
enum class SegmentUnit { word, codepoint, grapheme };

const char* to_string(SegmentUnit unit);
std::optional<SegmentUnit> parse_unit(std::string_view name); // accepts "char" for codepoint

/// Splits normalized text into tokens. The returned views point into `normalized`.
/// Word tokens split on White_Space and are never empty; codepoint and grapheme
/// tokens concatenate back to the input exactly.
std::vector<std::string_view> segment(std::string_view normalized, SegmentUnit unit);
std::vector<std::string_view> segment(const Transcript& t, SegmentUnit unit);
// the views would dangle if the source were a temporary
std::vector<std::string_view> segment(const Transcript&&, SegmentUnit) = delete;
std::vector<std::string_view> segment(std::string&&, SegmentUnit) = delete;

/// Strict UTF-8 decode; throws DecodeError with the byte offset on bad input.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

bool is_whitespace(char32_t cp);

} // namespace ocrkit::text
