// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace ocrkit::util {

struct JsonlLine {
    std::size_t line_no; // 1-based
    nlohmann::ordered_json value;
};

/// Reads one JSON document per non-empty line. Lines that fail to parse are
/// reported in `errors` ("line N: message") and skipped.
std::vector<JsonlLine> read_jsonl(const std::filesystem::path& path,
                                  std::vector<std::string>& errors);

/// Writes documents one per line. Throws Error on I/O failure.
void write_jsonl(const std::filesystem::path& path,
                 const std::vector<nlohmann::ordered_json>& docs);

/// Atomically replaces `path` (write temp + rename).
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

} // namespace ocrkit::util
