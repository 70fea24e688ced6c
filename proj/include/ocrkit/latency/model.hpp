// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ocrkit::latency {

enum class ProfileSource { bundled, measured };

/// Average number of decoder tokens emitted per word of a language.
struct TokenProfile {
    std::string language;
    double tokens_per_word = 0.0; // > 0
    ProfileSource source = ProfileSource::measured;
};

/// Decoding-latency model parameters: latency(T) = ttft + T * inter_token.
struct LatencyParams {
    double ttft_s = 0.125;
    double inter_token_s = 0.004;
};

/// Stream timestamps for one request, seconds on a monotonic clock.
struct TimingTrace {
    double request_at_s = 0.0;
    double first_token_at_s = 0.0;
    double last_token_at_s = 0.0;
    std::size_t token_count = 0;
};

struct LatencySummary {
    std::string group;
    double mean_seconds = 0.0;
    std::size_t n = 0;
};

/// words * tokens_per_word. Token counts are real-valued because the ratios
/// are corpus averages.
double project_tokens(double words, const TokenProfile& profile);

/// ttft + tokens * inter_token.
double project_latency(double tokens, const LatencyParams& params);

/// ttft = mean(first - request); inter_token = mean((last - first)/(n_tokens - 1)).
/// Throws Error if any trace has fewer than 2 tokens (inter-token undefined).
LatencyParams estimate_params(std::span<const TimingTrace> traces);

/// Language -> group assignment plus the group emission order. An optional
/// fallback group absorbs unmapped languages; without it they are an error.
struct Grouping {
    std::vector<std::string> order;
    std::map<std::string, std::string> by_language;
    std::optional<std::string> fallback;

    std::string group_for(const std::string& language) const; // throws on unmapped
};

/// Unweighted mean end-to-end seconds per group, emitted in configured order.
/// Groups with no records are omitted.
std::vector<LatencySummary> summarize_latency(
    std::span<const std::pair<std::string, double>> records, const Grouping& grouping);

/// The ten-language default profile shipped with the toolkit.
std::vector<TokenProfile> bundled_profiles();

/// Plain tabular text: "language<TAB>tokens_per_word", '#' comments.
std::vector<TokenProfile> load_profiles(const std::filesystem::path& path);
std::vector<TokenProfile> parse_profiles(std::string_view text, ProfileSource source);

} // namespace ocrkit::latency
