// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/backends/http_backend.hpp"

#include <chrono>
#include <cstdlib>

#include <httplib.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "ocrkit/error.hpp"
#include "ocrkit/util/jsonl.hpp"

namespace ocrkit::backends {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string base64(std::string_view data) {
    std::string out(4 * ((data.size() + 2) / 3) + 1, '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                  reinterpret_cast<const unsigned char*>(data.data()),
                                  static_cast<int>(data.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::string mime_type(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    for (char& c : ext) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (ext == ".png") return "image/png";
    if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
    if (ext == ".webp") return "image/webp";
    if (ext == ".gif") return "image/gif";
    if (ext == ".bmp") return "image/bmp";
    if (ext == ".tif" || ext == ".tiff") return "image/tiff";
    return "application/octet-stream";
}

// Incremental server-sent-events reader; fires the callback once per
// non-empty `data:` payload.
class SseReader {
public:
    explicit SseReader(std::function<void(std::string_view)> on_data)
        : on_data_(std::move(on_data)) {}

    void feed(const char* data, std::size_t len) {
        buffer_.append(data, len);
        std::size_t eol;
        while ((eol = buffer_.find('\n')) != std::string::npos) {
            std::string line = buffer_.substr(0, eol);
            buffer_.erase(0, eol + 1);
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.rfind("data:", 0) == 0) {
                std::string_view payload(line);
                payload.remove_prefix(5);
                if (!payload.empty() && payload.front() == ' ') {
                    payload.remove_prefix(1);
                }
                if (!payload.empty()) {
                    on_data_(payload);
                }
            }
        }
    }

private:
    std::string buffer_;
    std::function<void(std::string_view)> on_data_;
};

} // namespace

HttpBackend::HttpBackend(BackendSpec spec) : spec_(std::move(spec)) {
    const std::string& url = spec_.endpoint;
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error("endpoint is not a URL: " + url);
    }
    const std::size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        base_url_ = url;
        path_ = "/";
    } else {
        base_url_ = url.substr(0, path_start);
        path_ = url.substr(path_start);
    }
}

PredictionRecord HttpBackend::transcribe(const Request& request) {
    PredictionRecord rec;
    for (int attempt_no = 0; attempt_no <= spec_.retries; ++attempt_no) {
        rec = attempt(request);
        if (rec.ok()) {
            return rec;
        }
    }
    return rec;
}

PredictionRecord HttpBackend::attempt(const Request& request) {
    PredictionRecord rec;
    rec.sample_id = request.sample_id;
    rec.model = spec_.model.empty() ? spec_.name : spec_.model;

    httplib::Client client(base_url_);
    client.set_connection_timeout(std::chrono::duration<double>(spec_.timeout_s));
    client.set_read_timeout(std::chrono::duration<double>(spec_.timeout_s));

    httplib::Headers headers;
    if (!spec_.auth_env.empty()) {
        if (const char* token = std::getenv(spec_.auth_env.c_str())) {
            headers.emplace("Authorization", std::string("Bearer ") + token);
        }
    }

    std::vector<std::pair<std::string, std::string>> image_bytes; // (mime, bytes)
    try {
        for (const auto& img : request.images) {
            image_bytes.emplace_back(mime_type(img), util::read_file(img));
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
        return rec;
    }

    const Clock::time_point started = Clock::now();
    latency::TimingTrace trace;
    std::size_t token_events = 0;
    std::string text;
    std::string error;

    const auto on_token = [&](std::string_view piece) {
        const double now = seconds_since(started);
        if (token_events == 0) {
            trace.first_token_at_s = now;
        }
        trace.last_token_at_s = now;
        ++token_events;
        text.append(piece);
    };

    httplib::Result result;
    if (spec_.request_style == RequestStyle::chat_image) {
        ordered_json content = ordered_json::array();
        content.push_back({{"type", "text"}, {"text", request.prompt}});
        for (const auto& [mime, bytes] : image_bytes) {
            content.push_back(
                {{"type", "image_url"},
                 {"image_url", {{"url", "data:" + mime + ";base64," + base64(bytes)}}}});
        }
        ordered_json body = {{"model", rec.model},
                             {"stream", spec_.stream},
                             {"messages", ordered_json::array({ordered_json{
                                              {"role", "user"}, {"content", content}}})}};

        if (spec_.stream) {
            SseReader sse([&](std::string_view payload) {
                if (payload == "[DONE]") {
                    return;
                }
                const auto event = ordered_json::parse(payload, nullptr, false);
                if (event.is_discarded()) {
                    error = "malformed stream event";
                    return;
                }
                const auto& choices = event.contains("choices") ? event["choices"]
                                                                : ordered_json::array();
                if (!choices.empty() && choices[0].contains("delta") &&
                    choices[0]["delta"].contains("content") &&
                    choices[0]["delta"]["content"].is_string()) {
                    const std::string piece = choices[0]["delta"]["content"].get<std::string>();
                    if (!piece.empty()) {
                        on_token(piece);
                    }
                }
            });
            httplib::Request req;
            req.method = "POST";
            req.path = path_;
            req.headers = headers;
            req.body = body.dump();
            req.set_header("Content-Type", "application/json");
            req.content_receiver = [&](const char* data, std::size_t len, std::uint64_t,
                                       std::uint64_t) {
                sse.feed(data, len);
                return true;
            };
            result = client.send(req);
        } else {
            result = client.Post(path_, headers, body.dump(), "application/json");
        }
    } else { // simple_image
        if (spec_.stream) {
            httplib::Request req;
            req.method = "POST";
            req.path = path_;
            req.headers = headers;
            httplib::MultipartFormDataItems items;
            items.push_back({"prompt", request.prompt, "", ""});
            for (std::size_t i = 0; i < image_bytes.size(); ++i) {
                items.push_back({"image", image_bytes[i].second,
                                 request.images[i].filename().string(), image_bytes[i].first});
            }
            const std::string boundary = httplib::detail::make_multipart_data_boundary();
            req.set_header(
                "Content-Type",
                httplib::detail::serialize_multipart_formdata_get_content_type(boundary));
            req.body = httplib::detail::serialize_multipart_formdata(items, boundary);
            req.content_receiver = [&](const char* data, std::size_t len, std::uint64_t,
                                       std::uint64_t) {
                if (len > 0) {
                    on_token(std::string_view(data, len));
                }
                return true;
            };
            result = client.send(req);
        } else {
            httplib::MultipartFormDataItems items;
            items.push_back({"prompt", request.prompt, "", ""});
            for (std::size_t i = 0; i < image_bytes.size(); ++i) {
                items.push_back({"image", image_bytes[i].second,
                                 request.images[i].filename().string(), image_bytes[i].first});
            }
            result = client.Post(path_, headers, items);
        }
    }

    rec.end_to_end_s = seconds_since(started);
    if (!result) {
        rec.error = "request failed: " + httplib::to_string(result.error());
        return rec;
    }
    if (result->status != 200) {
        rec.error = "HTTP " + std::to_string(result->status);
        return rec;
    }
    if (!error.empty()) {
        rec.error = error;
        return rec;
    }

    if (spec_.stream) {
        if (token_events == 0) {
            rec.error = "empty stream";
            return rec;
        }
        rec.output_text = std::move(text);
        trace.request_at_s = 0.0;
        trace.token_count = token_events;
        rec.trace = trace;
        return rec;
    }

    // Non-streaming responses carry the text in the body.
    if (spec_.request_style == RequestStyle::chat_image) {
        const auto doc = ordered_json::parse(result->body, nullptr, false);
        if (doc.is_discarded() || !doc.contains("choices") || doc["choices"].empty()) {
            rec.error = "malformed response body";
            return rec;
        }
        const auto& msg = doc["choices"][0];
        if (msg.contains("message") && msg["message"].contains("content")) {
            rec.output_text = msg["message"]["content"].get<std::string>();
        } else {
            rec.error = "response has no message content";
        }
    } else {
        const auto doc = ordered_json::parse(result->body, nullptr, false);
        if (!doc.is_discarded() && doc.is_object() && doc.contains("text")) {
            rec.output_text = doc["text"].get<std::string>();
        } else {
            rec.output_text = result->body;
        }
    }
    return rec;
}

} // namespace ocrkit::backends
