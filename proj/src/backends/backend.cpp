// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/backends/backend.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include <json.hpp>

#include "ocrkit/backends/http_backend.hpp"
#include "ocrkit/error.hpp"
#include "ocrkit/text/segment.hpp"
#include "ocrkit/util/jsonl.hpp"

namespace ocrkit::backends {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

RequestStyle parse_style(const std::string& name) {
    if (name == "chat_image") return RequestStyle::chat_image;
    if (name == "simple_image") return RequestStyle::simple_image;
    throw Error("unknown request_style '" + name + "' (expected chat_image or simple_image)");
}

} // namespace

BackendSpec load_backend_spec(const std::string& path_or_shorthand) {
    BackendSpec spec;
    if (path_or_shorthand == "mock" || path_or_shorthand.starts_with("mock:")) {
        spec.name = "mock";
        spec.model = "mock";
        spec.endpoint = "mock://";
        if (path_or_shorthand.starts_with("mock:")) {
            spec.endpoint += path_or_shorthand.substr(5);
        }
        return spec;
    }
    ordered_json doc;
    try {
        doc = ordered_json::parse(util::read_file(path_or_shorthand));
    } catch (const std::exception& e) {
        throw Error("malformed backend spec " + path_or_shorthand + ": " + e.what());
    }
    spec.name = doc.value("name", std::string("backend"));
    spec.endpoint = doc.at("endpoint").get<std::string>();
    spec.request_style = parse_style(doc.value("request_style", std::string("chat_image")));
    spec.timeout_s = doc.value("timeout_s", 120.0);
    spec.max_concurrency = doc.value("max_concurrency", 1);
    if (spec.max_concurrency < 1) {
        throw Error("max_concurrency must be >= 1");
    }
    spec.auth_env = doc.value("auth_env", std::string());
    spec.model = doc.value("model", spec.name);
    spec.stream = doc.value("stream", true);
    spec.retries = doc.value("retries", 2);
    return spec;
}

std::string serialize_prediction(const PredictionRecord& rec) {
    ordered_json doc = ordered_json::object();
    doc["format_version"] = kFormatVersion;
    doc["sample_id"] = rec.sample_id;
    doc["model"] = rec.model;
    doc["output_text"] = rec.output_text;
    if (rec.error) {
        doc["error"] = *rec.error;
    }
    if (rec.trace) {
        doc["trace"] = {{"request_at_s", rec.trace->request_at_s},
                        {"first_token_at_s", rec.trace->first_token_at_s},
                        {"last_token_at_s", rec.trace->last_token_at_s},
                        {"token_count", rec.trace->token_count}};
    }
    doc["end_to_end_s"] = rec.end_to_end_s;
    return doc.dump();
}

PredictionRecord parse_prediction(std::string_view json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error(std::string("malformed prediction record: ") + e.what());
    }
    if (doc.value("format_version", 0) != kFormatVersion) {
        throw Error("unsupported prediction record format_version");
    }
    PredictionRecord rec;
    rec.sample_id = doc.at("sample_id").get<std::string>();
    rec.model = doc.at("model").get<std::string>();
    rec.output_text = doc.value("output_text", std::string());
    if (doc.contains("error")) {
        rec.error = doc["error"].get<std::string>();
    }
    if (doc.contains("trace")) {
        const auto& t = doc["trace"];
        latency::TimingTrace trace;
        trace.request_at_s = t.at("request_at_s").get<double>();
        trace.first_token_at_s = t.at("first_token_at_s").get<double>();
        trace.last_token_at_s = t.at("last_token_at_s").get<double>();
        trace.token_count = t.at("token_count").get<std::size_t>();
        rec.trace = trace;
    }
    rec.end_to_end_s = doc.value("end_to_end_s", 0.0);
    return rec;
}

MockBackend::MockBackend(BackendSpec spec, Script script)
    : spec_(std::move(spec)), script_(std::move(script)) {}

MockBackend::Script MockBackend::load_script(const std::filesystem::path& path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(util::read_file(path));
    } catch (const std::exception& e) {
        throw Error("malformed mock script " + path.string() + ": " + e.what());
    }
    Script script;
    script.ttft_s = doc.value("ttft_s", script.ttft_s);
    script.inter_token_s = doc.value("inter_token_s", script.inter_token_s);
    script.sleep_s = doc.value("sleep_s", 0.0);
    script.jitter_s = doc.value("jitter_s", 0.0);
    script.fallback_text = doc.value("fallback_text", std::string());
    if (doc.contains("outputs")) {
        for (const auto& [sample_id, out] : doc["outputs"].items()) {
            Script::Output o;
            o.text = out.value("text", std::string());
            o.token_count = out.value("token_count", std::size_t{0});
            if (out.contains("error")) {
                o.error = out["error"].get<std::string>();
            }
            script.outputs.emplace(sample_id, std::move(o));
        }
    }
    return script;
}

PredictionRecord MockBackend::transcribe(const Request& request) {
    const int now_active = ++active_;
    int prev_peak = peak_.load();
    while (now_active > prev_peak && !peak_.compare_exchange_weak(prev_peak, now_active)) {
    }
    ++total_;
    if (script_.sleep_s > 0.0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(script_.sleep_s));
    }

    PredictionRecord rec;
    rec.sample_id = request.sample_id;
    rec.model = spec_.model.empty() ? spec_.name : spec_.model;

    const auto it = script_.outputs.find(request.sample_id);
    if (it != script_.outputs.end() && it->second.error) {
        rec.error = it->second.error;
        --active_;
        return rec;
    }
    rec.output_text = it != script_.outputs.end() ? it->second.text : script_.fallback_text;

    std::size_t tokens = it != script_.outputs.end() ? it->second.token_count : 0;
    if (tokens == 0) {
        tokens = std::max<std::size_t>(1, text::decode_utf8(rec.output_text).size());
    }
    double ttft = script_.ttft_s;
    if (script_.jitter_s > 0.0) {
        // deterministic per-sample offset in [0, jitter_s)
        const std::size_t h =
            std::hash<std::string>{}(request.sample_id) ^ (spec_.seed * 0x9E3779B9u);
        ttft += script_.jitter_s * static_cast<double>(h % 10000) / 10000.0;
    }
    latency::TimingTrace trace;
    trace.request_at_s = 0.0;
    trace.first_token_at_s = ttft;
    trace.last_token_at_s =
        ttft + static_cast<double>(tokens > 1 ? tokens - 1 : 0) * script_.inter_token_s;
    trace.token_count = tokens;
    rec.trace = trace;
    rec.end_to_end_s = trace.last_token_at_s;
    --active_;
    return rec;
}

std::unique_ptr<Backend> make_backend(const BackendSpec& spec) {
    if (spec.endpoint.starts_with("mock://")) {
        const std::string script_path = spec.endpoint.substr(7);
        MockBackend::Script script;
        if (!script_path.empty()) {
            script = MockBackend::load_script(script_path);
        }
        return std::make_unique<MockBackend>(spec, std::move(script));
    }
    return std::make_unique<HttpBackend>(spec);
}

std::vector<PredictionRecord> run_requests(Backend& backend,
                                           std::span<const Request> requests,
                                           int concurrency) {
    std::vector<PredictionRecord> results(requests.size());
    if (requests.empty()) {
        return results;
    }
    concurrency = std::max(1, std::min<int>(concurrency, static_cast<int>(requests.size())));
    if (concurrency == 1) {
        for (std::size_t i = 0; i < requests.size(); ++i) {
            results[i] = backend.transcribe(requests[i]);
        }
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(concurrency));
    for (int w = 0; w < concurrency; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < requests.size();
                 i = next.fetch_add(1)) {
                results[i] = backend.transcribe(requests[i]);
            }
        });
    }
    for (std::thread& t : workers) {
        t.join();
    }
    return results;
}

} // namespace ocrkit::backends
