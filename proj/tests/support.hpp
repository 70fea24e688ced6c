// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ocrkit/error.hpp"

namespace ocrkit::test {

inline std::filesystem::path source_dir() {
    return OCRKIT_SOURCE_DIR;
}

inline std::filesystem::path fixtures_dir() {
    return source_dir() / "assets" / "fixtures";
}

/// Decodes the \t \n \r \\ \uXXXX \UXXXXXXXX escapes used in fixture files.
inline std::string unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out.push_back(s[i]);
            continue;
        }
        if (i + 1 >= s.size()) {
            throw Error("dangling escape in fixture");
        }
        const char kind = s[++i];
        if (kind == 't') {
            out.push_back('\t');
        } else if (kind == 'n') {
            out.push_back('\n');
        } else if (kind == 'r') {
            out.push_back('\r');
        } else if (kind == '\\') {
            out.push_back('\\');
        } else if (kind == 'u' || kind == 'U') {
            const std::size_t digits = kind == 'u' ? 4 : 8;
            if (i + digits >= s.size()) {
                throw Error("truncated \\u escape in fixture");
            }
            std::uint32_t cp = 0;
            for (std::size_t k = 1; k <= digits; ++k) {
                const char c = s[i + k];
                cp <<= 4;
                if (c >= '0' && c <= '9') {
                    cp |= static_cast<std::uint32_t>(c - '0');
                } else if (c >= 'A' && c <= 'F') {
                    cp |= static_cast<std::uint32_t>(c - 'A' + 10);
                } else if (c >= 'a' && c <= 'f') {
                    cp |= static_cast<std::uint32_t>(c - 'a' + 10);
                } else {
                    throw Error("bad hex digit in fixture escape");
                }
            }
            i += digits;
            // encode UTF-8
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
        } else {
            throw Error("unknown fixture escape");
        }
    }
    return out;
}

inline std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open fixture: " + path.string());
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> cols;
        std::size_t pos = 0;
        while (true) {
            const std::size_t tab = line.find('\t', pos);
            if (tab == std::string::npos) {
                cols.push_back(line.substr(pos));
                break;
            }
            cols.push_back(line.substr(pos, tab - pos));
            pos = tab + 1;
        }
        rows.push_back(std::move(cols));
    }
    return rows;
}

/// Random strings over scripts the toolkit meets in practice. Includes
/// combining marks and whitespace so properties get exercised on hard cases.
class StringGen {
public:
    explicit StringGen(std::uint32_t seed) : rng_(seed) {
        const auto add_range = [&](char32_t lo, char32_t hi) {
            for (char32_t c = lo; c <= hi; ++c) {
                pool_.push_back(c);
            }
        };
        add_range(U'a', U'z');
        add_range(U'A', U'Z');
        add_range(U'0', U'9');
        add_range(0x0901, 0x0939); // Devanagari letters and signs
        add_range(0x093C, 0x094D); // matras, nukta, virama
        add_range(0x0C05, 0x0C39); // Telugu
        add_range(0x0300, 0x0310); // combining marks
        pool_.push_back(U' ');
        pool_.push_back(U'\t');
        pool_.push_back(U'\n');
        pool_.push_back(0x00A0);
        pool_.push_back(0x1F600);
        pool_.push_back(0x200D);
    }

    std::string next(std::size_t max_len) {
        std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
        std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
        const std::size_t n = len_dist(rng_);
        std::u32string s;
        for (std::size_t i = 0; i < n; ++i) {
            s.push_back(pool_[pick(rng_)]);
        }
        std::string out;
        for (char32_t cp : s) {
            char buf[4];
            if (cp < 0x80) {
                out.push_back(static_cast<char>(cp));
            } else if (cp < 0x800) {
                buf[0] = static_cast<char>(0xC0 | (cp >> 6));
                buf[1] = static_cast<char>(0x80 | (cp & 0x3F));
                out.append(buf, 2);
            } else if (cp < 0x10000) {
                buf[0] = static_cast<char>(0xE0 | (cp >> 12));
                buf[1] = static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
                buf[2] = static_cast<char>(0x80 | (cp & 0x3F));
                out.append(buf, 3);
            } else {
                buf[0] = static_cast<char>(0xF0 | (cp >> 18));
                buf[1] = static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
                buf[2] = static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
                buf[3] = static_cast<char>(0x80 | (cp & 0x3F));
                out.append(buf, 4);
            }
        }
        return out;
    }

    std::mt19937& rng() { return rng_; }

private:
    std::mt19937 rng_;
    std::vector<char32_t> pool_;
};

} // namespace ocrkit::test
