// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/backends/cache.hpp"

#include <fstream>

#include <json.hpp>

#include "ocrkit/error.hpp"
#include "ocrkit/util/digest.hpp"
#include "ocrkit/util/jsonl.hpp"

namespace ocrkit::backends {

namespace {
constexpr int kCacheFormatVersion = 1;
} // namespace

PredictionCache::PredictionCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw Error("cannot create cache directory " + dir_.string() + ": " + ec.message());
    }
}

std::filesystem::path PredictionCache::entry_path(const Key& key) const {
    const std::string addr =
        util::sha256_hex(key.sample_id + "\x1f" + key.model + "\x1f" + key.prompt_digest);
    return dir_ / (addr + ".json");
}

std::optional<PredictionRecord> PredictionCache::get(const Key& key) const {
    const auto path = entry_path(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto doc = nlohmann::ordered_json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() ||
        doc.value("cache_format_version", 0) != kCacheFormatVersion ||
        doc.value("sample_id", std::string()) != key.sample_id ||
        doc.value("model", std::string()) != key.model ||
        doc.value("prompt_digest", std::string()) != key.prompt_digest ||
        !doc.contains("record")) {
        // Corrupted or stale entry: evict and report a miss.
        std::error_code ec;
        std::filesystem::remove(path, ec);
        return std::nullopt;
    }
    try {
        return parse_prediction(doc["record"].dump());
    } catch (const Error&) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        return std::nullopt;
    }
}

void PredictionCache::put(const Key& key, const PredictionRecord& record) const {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    doc["cache_format_version"] = kCacheFormatVersion;
    doc["sample_id"] = key.sample_id;
    doc["model"] = key.model;
    doc["prompt_digest"] = key.prompt_digest;
    doc["record"] = nlohmann::ordered_json::parse(serialize_prediction(record));
    try {
        util::write_file_atomic(entry_path(key), doc.dump());
    } catch (const Error& e) {
        throw Error("cache write failed for " + entry_path(key).string() + ": " + e.what());
    }
}

} // namespace ocrkit::backends
