// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "ocrkit/backends/backend.hpp"

namespace ocrkit::backends {

/// Persistent one-file-per-record prediction cache, content-addressed by
/// (sample_id, model, prompt digest). Corrupted entries are treated as misses
/// and evicted; writes are atomic (temp file + rename).
class PredictionCache {
public:
    explicit PredictionCache(std::filesystem::path dir);

    struct Key {
        std::string sample_id;
        std::string model;
        std::string prompt_digest;
    };

    std::optional<PredictionRecord> get(const Key& key) const;
    void put(const Key& key, const PredictionRecord& record) const;

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path entry_path(const Key& key) const;

    std::filesystem::path dir_;
};

} // namespace ocrkit::backends
