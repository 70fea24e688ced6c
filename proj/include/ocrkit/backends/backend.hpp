// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ocrkit/latency/model.hpp"
#include "ocrkit/schemas/schemas.hpp"

namespace ocrkit::backends {

enum class RequestStyle { chat_image, simple_image };

/// Connection settings for one OCR/extraction endpoint. Auth tokens come only
/// from the environment variable named in `auth_env`, never from the spec.
struct BackendSpec {
    std::string name = "backend";
    std::string endpoint;
    RequestStyle request_style = RequestStyle::chat_image;
    double timeout_s = 120.0;
    int max_concurrency = 1;
    std::string auth_env;
    std::string model; // model field sent on chat-style requests
    bool stream = true;
    int retries = 2;
    unsigned seed = 0; // drives mock-backend jitter only
};

/// Parses a spec JSON file, or the shorthands "mock" / "mock:<script.json>".
BackendSpec load_backend_spec(const std::string& path_or_shorthand);

struct Request {
    std::string sample_id;
    std::vector<std::filesystem::path> images;
    std::string prompt;
};

/// One backend response. Exactly one of output_text/error is meaningful;
/// `trace` is present iff the request streamed.
struct PredictionRecord {
    std::string sample_id;
    std::string model;
    std::string output_text;
    std::optional<schemas::FieldRecord> parsed_fields;
    std::optional<latency::TimingTrace> trace;
    std::optional<std::string> error;
    double end_to_end_s = 0.0;

    bool ok() const { return !error.has_value(); }
};

std::string serialize_prediction(const PredictionRecord& rec);
PredictionRecord parse_prediction(std::string_view json_text);

class Backend {
public:
    virtual ~Backend() = default;
    virtual PredictionRecord transcribe(const Request& request) = 0;
    virtual const BackendSpec& spec() const = 0;
};

/// Deterministic in-process backend for tests and offline runs. Outputs are
/// looked up by sample id; timing traces are synthesized from the configured
/// ttft / inter-token values, so downstream estimates recover them exactly.
class MockBackend : public Backend {
public:
    struct Script {
        struct Output {
            std::string text;
            std::size_t token_count = 0; // 0: derive from text length
            std::optional<std::string> error;
        };
        std::map<std::string, Output> outputs; // by sample_id
        std::string fallback_text = "";
        double ttft_s = 0.125;
        double inter_token_s = 0.004;
        double sleep_s = 0.0;  // real delay per request, for concurrency tests
        double jitter_s = 0.0; // max per-sample ttft offset, derived from the spec seed
    };

    MockBackend(BackendSpec spec, Script script);
    static Script load_script(const std::filesystem::path& path);

    PredictionRecord transcribe(const Request& request) override;
    const BackendSpec& spec() const override { return spec_; }

    int peak_concurrency() const { return peak_.load(); }
    int total_requests() const { return total_.load(); }

private:
    BackendSpec spec_;
    Script script_;
    std::atomic<int> active_{0};
    std::atomic<int> peak_{0};
    std::atomic<int> total_{0};
};

/// Builds a backend from a spec: "mock://..." endpoints yield a MockBackend,
/// everything else an HTTP client.
std::unique_ptr<Backend> make_backend(const BackendSpec& spec);

/// Issues the requests with at most `concurrency` in flight (1 = strictly
/// sequential, the latency-measurement protocol). Results keep request order.
std::vector<PredictionRecord> run_requests(Backend& backend,
                                           std::span<const Request> requests,
                                           int concurrency);

} // namespace ocrkit::backends
