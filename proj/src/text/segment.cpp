// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/text/segment.hpp"

#include <memory>

#include <unicode/brkiter.h>
#include <unicode/uchar.h>
#include <unicode/utext.h>

#include "ocrkit/error.hpp"

namespace ocrkit::text {

namespace {

// Strict decoder: rejects overlong forms, surrogates, and values above
// U+10FFFF. Returns the code point and advances `i` past it.
char32_t decode_one(std::string_view s, std::size_t& i) {
    const std::size_t start = i;
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        throw DecodeError(start);
    }
    if (i + len > s.size()) {
        throw DecodeError(start);
    }
    for (int k = 1; k < len; ++k) {
        const unsigned char bk = byte(i + k);
        if ((bk & 0xC0) != 0x80) {
            throw DecodeError(start);
        }
        cp = (cp << 6) | (bk & 0x3F);
    }
    static constexpr char32_t min_for_len[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        throw DecodeError(start);
    }
    i += len;
    return cp;
}

std::size_t encoded_len(char32_t cp) {
    if (cp < 0x80) return 1;
    if (cp < 0x800) return 2;
    if (cp < 0x10000) return 3;
    return 4;
}

const icu::BreakIterator& grapheme_breaker() {
    // BreakIterator is stateful; keep one per thread.
    thread_local std::unique_ptr<icu::BreakIterator> bi = [] {
        UErrorCode ec = U_ZERO_ERROR;
        std::unique_ptr<icu::BreakIterator> b(
            icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(), ec));
        if (U_FAILURE(ec) || !b) {
            throw Error("ICU grapheme break iterator unavailable");
        }
        return b;
    }();
    return *bi;
}

} // namespace

const char* to_string(SegmentUnit unit) {
    switch (unit) {
    case SegmentUnit::word: return "word";
    case SegmentUnit::codepoint: return "char";
    case SegmentUnit::grapheme: return "grapheme";
    }
    return "?";
}

std::optional<SegmentUnit> parse_unit(std::string_view name) {
    if (name == "word") return SegmentUnit::word;
    if (name == "char" || name == "codepoint") return SegmentUnit::codepoint;
    if (name == "grapheme") return SegmentUnit::grapheme;
    return std::nullopt;
}

bool is_whitespace(char32_t cp) {
    return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0;
}

std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        out.push_back(decode_one(s, i));
    }
    return out;
}

std::string encode_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::vector<std::string_view> segment(std::string_view normalized, SegmentUnit unit) {
    std::vector<std::string_view> tokens;
    switch (unit) {
    case SegmentUnit::word: {
        std::size_t i = 0;
        std::size_t word_start = std::string_view::npos;
        while (i < normalized.size()) {
            const std::size_t here = i;
            const char32_t cp = decode_one(normalized, i);
            if (is_whitespace(cp)) {
                if (word_start != std::string_view::npos) {
                    tokens.push_back(normalized.substr(word_start, here - word_start));
                    word_start = std::string_view::npos;
                }
            } else if (word_start == std::string_view::npos) {
                word_start = here;
            }
        }
        if (word_start != std::string_view::npos) {
            tokens.push_back(normalized.substr(word_start));
        }
        break;
    }
    case SegmentUnit::codepoint: {
        std::size_t i = 0;
        while (i < normalized.size()) {
            const std::size_t here = i;
            decode_one(normalized, i);
            tokens.push_back(normalized.substr(here, i - here));
        }
        break;
    }
    case SegmentUnit::grapheme: {
        if (normalized.empty()) {
            break;
        }
        decode_utf8(normalized); // validate before handing UTF-8 to ICU
        auto& bi = const_cast<icu::BreakIterator&>(grapheme_breaker());
        UErrorCode ec = U_ZERO_ERROR;
        UText ut = UTEXT_INITIALIZER;
        utext_openUTF8(&ut, normalized.data(), static_cast<int64_t>(normalized.size()), &ec);
        if (U_FAILURE(ec)) {
            throw Error("utext open failed");
        }
        bi.setText(&ut, ec);
        if (U_FAILURE(ec)) {
            utext_close(&ut);
            throw Error("break iterator setText failed");
        }
        int32_t prev = bi.first();
        for (int32_t next = bi.next(); next != icu::BreakIterator::DONE; next = bi.next()) {
            tokens.push_back(normalized.substr(static_cast<std::size_t>(prev),
                                               static_cast<std::size_t>(next - prev)));
            prev = next;
        }
        utext_close(&ut);
        break;
    }
    }
    return tokens;
}

std::vector<std::string_view> segment(const Transcript& t, SegmentUnit unit) {
    return segment(t.normalized, unit);
}

} // namespace ocrkit::text
