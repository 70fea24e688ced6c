// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace ocrkit::util {

/// Lowercase hex SHA-256 of the input bytes.
std::string sha256_hex(std::string_view data);

/// SHA-256 of a file's contents; throws Error if unreadable.
std::string sha256_file(const std::filesystem::path& path);

} // namespace ocrkit::util
