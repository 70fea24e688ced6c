// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/util/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "ocrkit/error.hpp"

namespace ocrkit::util {

std::vector<JsonlLine> read_jsonl(const std::filesystem::path& path,
                                  std::vector<std::string>& errors) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open file: " + path.string());
    }
    std::vector<JsonlLine> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto doc = nlohmann::ordered_json::parse(line, nullptr, false);
        if (doc.is_discarded()) {
            errors.push_back("line " + std::to_string(line_no) + ": malformed JSON");
            continue;
        }
        out.push_back({line_no, std::move(doc)});
    }
    return out;
}

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<nlohmann::ordered_json>& docs) {
    std::string body;
    for (const auto& doc : docs) {
        body += doc.dump();
        body += '\n';
    }
    write_file_atomic(path, body);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write file: " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open file: " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace ocrkit::util
