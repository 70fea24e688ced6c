// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ocrkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid UTF-8 in an input string; offset is the byte position of the
/// offending sequence.
class DecodeError : public Error {
public:
    explicit DecodeError(std::size_t offset)
        : Error("invalid UTF-8 byte sequence at offset " + std::to_string(offset)),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace ocrkit
