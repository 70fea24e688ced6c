// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ocrkit/backends/backend.hpp"

namespace ocrkit::backends {

/// HTTP(S) client for multimodal endpoints. chat_image posts an OpenAI-style
/// chat payload with base64 image parts and reads server-sent events when
/// streaming; simple_image posts multipart/form-data and reads chunked text.
class HttpBackend : public Backend {
public:
    explicit HttpBackend(BackendSpec spec);

    PredictionRecord transcribe(const Request& request) override;
    const BackendSpec& spec() const override { return spec_; }

private:
    PredictionRecord attempt(const Request& request);

    BackendSpec spec_;
    std::string base_url_;
    std::string path_;
};

} // namespace ocrkit::backends
