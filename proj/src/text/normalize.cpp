// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/text/normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "ocrkit/error.hpp"
#include "ocrkit/text/segment.hpp"

namespace ocrkit::text {

namespace {

const icu::Normalizer2& normalizer(UnicodeForm form) {
    UErrorCode ec = U_ZERO_ERROR;
    const icu::Normalizer2* n = form == UnicodeForm::composed
                                    ? icu::Normalizer2::getNFCInstance(ec)
                                    : icu::Normalizer2::getNFDInstance(ec);
    if (U_FAILURE(ec) || n == nullptr) {
        throw Error("ICU normalizer unavailable");
    }
    return *n;
}

std::string collapse_and_strip(std::u32string_view s, bool collapse, bool strip) {
    std::u32string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char32_t cp : s) {
        if (collapse && is_whitespace(cp)) {
            pending_space = !out.empty() || !strip;
            continue;
        }
        if (pending_space) {
            out.push_back(U' ');
            pending_space = false;
        }
        out.push_back(cp);
    }
    if (pending_space && !strip) {
        out.push_back(U' ');
    }
    if (strip && !collapse) {
        std::size_t b = 0, e = out.size();
        while (b < e && is_whitespace(out[b])) ++b;
        while (e > b && is_whitespace(out[e - 1])) --e;
        out = out.substr(b, e - b);
    }
    return encode_utf8(out);
}

} // namespace

std::string NormalizationPolicy::describe() const {
    std::string d = unicode_form == UnicodeForm::composed ? "nfc" : "nfd";
    if (case_fold) d += "+fold";
    if (collapse_whitespace) d += "+collapse";
    if (strip) d += "+strip";
    return d;
}

std::string normalize_text(std::string_view raw, const NormalizationPolicy& policy) {
    // Validates UTF-8 (and reports the offending offset) before ICU sees it.
    std::u32string cps = decode_utf8(raw);

    icu::UnicodeString us = icu::UnicodeString::fromUTF32(
        reinterpret_cast<const UChar32*>(cps.data()), static_cast<int32_t>(cps.size()));
    if (policy.case_fold) {
        us.foldCase(U_FOLD_CASE_DEFAULT);
    }
    UErrorCode ec = U_ZERO_ERROR;
    icu::UnicodeString normalized = normalizer(policy.unicode_form).normalize(us, ec);
    if (U_FAILURE(ec)) {
        throw Error("unicode normalization failed");
    }

    std::u32string out(static_cast<std::size_t>(normalized.countChar32()), U'\0');
    normalized.toUTF32(reinterpret_cast<UChar32*>(out.data()),
                       static_cast<int32_t>(out.size()), ec);
    if (U_FAILURE(ec)) {
        throw Error("unicode conversion failed");
    }
    return collapse_and_strip(out, policy.collapse_whitespace, policy.strip);
}

Transcript normalize(std::string_view raw, const NormalizationPolicy& policy,
                     std::string_view language) {
    Transcript t;
    t.raw.assign(raw);
    t.normalized = normalize_text(raw, policy);
    t.language.assign(language);
    return t;
}

} // namespace ocrkit::text
