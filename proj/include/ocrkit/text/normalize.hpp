// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace ocrkit::text {

enum class UnicodeForm { composed, decomposed };

/// How raw OCR strings are canonicalized before any comparison. Applying a
/// policy twice gives the same result as applying it once.
struct NormalizationPolicy {
    UnicodeForm unicode_form = UnicodeForm::composed;
    bool case_fold = false;
    bool collapse_whitespace = true;
    bool strip = true;

    /// Compact, stable description used in report provenance.
    std::string describe() const;

    bool operator==(const NormalizationPolicy&) const = default;
};

/// A backend output or ground-truth string together with its normalized form.
struct Transcript {
    std::string raw;
    std::string normalized;
    std::string language; // BCP-47-style tag, e.g. "hi", "te", "en"
};

/// Normalizes `raw` under `policy`. Throws DecodeError on invalid UTF-8.
Transcript normalize(std::string_view raw, const NormalizationPolicy& policy = {},
                     std::string_view language = {});

/// Same pipeline, returning only the normalized string.
std::string normalize_text(std::string_view raw, const NormalizationPolicy& policy = {});

} // namespace ocrkit::text
