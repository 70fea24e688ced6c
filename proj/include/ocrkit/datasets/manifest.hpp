// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocrkit/schemas/schemas.hpp"

namespace ocrkit::datasets {

enum class Task { transcribe, extract, freeform_match };

const char* to_string(Task t);
std::optional<Task> parse_task(std::string_view name);

struct ManifestEntry {
    std::string sample_id;
    std::vector<std::string> images; // relative to the manifest root
    std::string language;
    Task task = Task::transcribe;
    std::optional<schemas::DocType> doc_type;
    std::string gt_text;                            // transcribe
    std::optional<schemas::FieldRecord> gt_fields;  // extract / freeform_match
    std::size_t line_no = 0;
};

struct Manifest {
    std::vector<ManifestEntry> entries; // in file order
    std::filesystem::path root;
    std::vector<std::string> errors;   // rejected lines, with line numbers
    std::vector<std::string> warnings; // e.g. unresolved image paths
};

/// Loads a line-delimited manifest (one JSON record per line with fields
/// sample_id, images, language, task, doc_type, ground_truth). Per-entry
/// problems are collected, not fatal; throws Error only when the file is
/// unreadable or no valid entry survives.
Manifest load_manifest(const std::filesystem::path& path);

struct ManifestStats {
    std::map<std::string, std::size_t> by_language;
    std::map<std::string, std::size_t> by_doc_type;
    std::map<std::string, std::size_t> by_task;
    std::size_t total = 0;
};

ManifestStats stats(const Manifest& m);

} // namespace ocrkit::datasets
