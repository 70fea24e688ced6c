// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/latency/model.hpp"

#include <charconv>

#include "ocrkit/embedded_assets.hpp"
#include "ocrkit/error.hpp"
#include "ocrkit/util/jsonl.hpp"

namespace ocrkit::latency {

double project_tokens(double words, const TokenProfile& profile) {
    if (profile.tokens_per_word <= 0.0) {
        throw Error("token profile for '" + profile.language + "' has non-positive ratio");
    }
    return words * profile.tokens_per_word;
}

double project_latency(double tokens, const LatencyParams& params) {
    return params.ttft_s + tokens * params.inter_token_s;
}

LatencyParams estimate_params(std::span<const TimingTrace> traces) {
    if (traces.empty()) {
        throw Error("no timing traces");
    }
    double ttft_sum = 0.0;
    double itl_sum = 0.0;
    for (const TimingTrace& t : traces) {
        if (t.token_count < 2) {
            throw Error("trace with fewer than 2 tokens: inter-token latency undefined");
        }
        ttft_sum += t.first_token_at_s - t.request_at_s;
        itl_sum += (t.last_token_at_s - t.first_token_at_s) /
                   static_cast<double>(t.token_count - 1);
    }
    const auto n = static_cast<double>(traces.size());
    return LatencyParams{ttft_sum / n, itl_sum / n};
}

std::string Grouping::group_for(const std::string& language) const {
    auto it = by_language.find(language);
    if (it != by_language.end()) {
        return it->second;
    }
    if (fallback) {
        return *fallback;
    }
    throw Error("no latency group configured for language '" + language + "'");
}

std::vector<LatencySummary> summarize_latency(
    std::span<const std::pair<std::string, double>> records, const Grouping& grouping) {
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& [language, seconds] : records) {
        auto& slot = acc[grouping.group_for(language)];
        slot.first += seconds;
        slot.second += 1;
    }
    std::vector<LatencySummary> out;
    for (const std::string& group : grouping.order) {
        auto it = acc.find(group);
        if (it == acc.end()) {
            continue;
        }
        out.push_back({group, it->second.first / static_cast<double>(it->second.second),
                       it->second.second});
    }
    return out;
}

std::vector<TokenProfile> parse_profiles(std::string_view text, ProfileSource source) {
    std::vector<TokenProfile> out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        ++line_no;
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            if (pos > text.size()) break;
            continue;
        }
        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw Error("profile line " + std::to_string(line_no) +
                        ": expected 'language<TAB>tokens_per_word'");
        }
        TokenProfile p;
        p.language.assign(line.substr(0, tab));
        const std::string_view num = line.substr(tab + 1);
        const auto [ptr, ec] =
            std::from_chars(num.data(), num.data() + num.size(), p.tokens_per_word);
        if (ec != std::errc() || ptr != num.data() + num.size() || p.tokens_per_word <= 0.0) {
            throw Error("profile line " + std::to_string(line_no) +
                        ": bad tokens_per_word value '" + std::string(num) + "'");
        }
        p.source = source;
        out.push_back(std::move(p));
        if (pos > text.size()) break;
    }
    if (out.empty()) {
        throw Error("token profile is empty");
    }
    return out;
}

std::vector<TokenProfile> bundled_profiles() {
    const auto text = embedded::asset("tokens_per_word.tsv");
    if (!text) {
        throw Error("bundled token profile missing");
    }
    return parse_profiles(*text, ProfileSource::bundled);
}

std::vector<TokenProfile> load_profiles(const std::filesystem::path& path) {
    return parse_profiles(util::read_file(path), ProfileSource::measured);
}

} // namespace ocrkit::latency
