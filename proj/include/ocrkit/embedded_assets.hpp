// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>

namespace ocrkit::embedded {

/// Returns the bundled asset with the given basename (e.g. "pan.txt",
/// "schemas.json", "tokens_per_word.tsv"), byte-exact to the file under
/// assets/ at build time.
std::optional<std::string_view> asset(std::string_view name);

} // namespace ocrkit::embedded
