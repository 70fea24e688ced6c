// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/metrics/distance.hpp"

#include <algorithm>

namespace ocrkit::metrics {

std::size_t edit_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    if (b.empty()) {
        return a.size();
    }
    // b is the shorter sequence; rows have |b|+1 entries.
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        const std::uint32_t ai = a[i - 1];
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (ai == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double normalized_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) {
        return 0.0;
    }
    return static_cast<double>(edit_distance(a, b)) / static_cast<double>(longest);
}

std::uint32_t TokenInterner::id(std::string_view token) {
    auto it = map_.find(token);
    if (it != map_.end()) {
        return it->second;
    }
    const auto next = static_cast<std::uint32_t>(map_.size());
    map_.emplace(std::string(token), next);
    return next;
}

std::vector<std::uint32_t> TokenInterner::intern(std::span<const std::string_view> tokens) {
    std::vector<std::uint32_t> ids;
    ids.reserve(tokens.size());
    for (std::string_view t : tokens) {
        ids.push_back(id(t));
    }
    return ids;
}

std::vector<std::uint32_t> tokenize_ids(std::string_view normalized, text::SegmentUnit unit,
                                        TokenInterner& interner) {
    if (unit == text::SegmentUnit::codepoint) {
        // Code points are their own ids; no interning needed.
        std::u32string cps = text::decode_utf8(normalized);
        return {cps.begin(), cps.end()};
    }
    std::vector<std::string_view> tokens = text::segment(normalized, unit);
    return interner.intern(tokens);
}

std::size_t edit_distance(std::string_view a, std::string_view b, text::SegmentUnit unit) {
    TokenInterner interner;
    const auto ia = tokenize_ids(a, unit, interner);
    const auto ib = tokenize_ids(b, unit, interner);
    return edit_distance(std::span<const std::uint32_t>(ia), std::span<const std::uint32_t>(ib));
}

double normalized_distance(std::string_view a, std::string_view b, text::SegmentUnit unit) {
    TokenInterner interner;
    const auto ia = tokenize_ids(a, unit, interner);
    const auto ib = tokenize_ids(b, unit, interner);
    return normalized_distance(std::span<const std::uint32_t>(ia),
                               std::span<const std::uint32_t>(ib));
}

} // namespace ocrkit::metrics
