// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/datasets/manifest.hpp"

#include <unordered_map>

#include "ocrkit/error.hpp"
#include "ocrkit/util/jsonl.hpp"

namespace ocrkit::datasets {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

std::optional<ManifestEntry> parse_entry(const ordered_json& doc, std::size_t line_no,
                                         std::vector<std::string>& errors) {
    const auto fail = [&](const std::string& msg) {
        errors.push_back("line " + std::to_string(line_no) + ": " + msg);
        return std::nullopt;
    };

    if (!doc.is_object()) {
        return fail("record is not an object");
    }
    if (doc.contains("format_version") && doc["format_version"].get<int>() > kFormatVersion) {
        return fail("unsupported format_version");
    }

    ManifestEntry e;
    e.line_no = line_no;
    if (!doc.contains("sample_id") || !doc["sample_id"].is_string()) {
        return fail("missing sample_id");
    }
    e.sample_id = doc["sample_id"].get<std::string>();

    if (doc.contains("images")) {
        if (!doc["images"].is_array()) {
            return fail("images must be an array of paths");
        }
        for (const auto& img : doc["images"]) {
            if (!img.is_string()) {
                return fail("images must be an array of paths");
            }
            e.images.push_back(img.get<std::string>());
        }
    }
    if (doc.contains("language") && doc["language"].is_string()) {
        e.language = doc["language"].get<std::string>();
    }

    const std::string task_name =
        doc.contains("task") && doc["task"].is_string() ? doc["task"].get<std::string>() : "";
    const auto task = parse_task(task_name);
    if (!task) {
        return fail("unknown task '" + task_name + "'");
    }
    e.task = *task;

    if (doc.contains("doc_type") && doc["doc_type"].is_string()) {
        const std::string name = doc["doc_type"].get<std::string>();
        const auto dt = schemas::parse_doc_type(name);
        if (!dt) {
            return fail("unknown doc_type '" + name + "'; expected one of: " +
                        schemas::known_doc_types());
        }
        e.doc_type = dt;
    }

    if (!doc.contains("ground_truth")) {
        return fail("missing ground_truth");
    }
    const auto& gt = doc["ground_truth"];
    if (e.task == Task::transcribe) {
        if (!gt.is_string()) {
            return fail("transcribe task requires string ground_truth");
        }
        e.gt_text = gt.get<std::string>();
    } else {
        if (!gt.is_object()) {
            return fail("field-map ground_truth required for task '" +
                        std::string(to_string(e.task)) + "'");
        }
        if (e.task == Task::extract && !e.doc_type) {
            return fail("extract task requires doc_type");
        }
        schemas::FieldRecord rec;
        rec.doc_type = e.doc_type;
        rec.pages = std::max<std::size_t>(1, e.images.size());
        for (const auto& [key, value] : gt.items()) {
            rec.values.emplace_back(key, value.is_string() ? value.get<std::string>()
                                                           : value.dump());
        }
        e.gt_fields = std::move(rec);
    }
    return e;
}

} // namespace

const char* to_string(Task t) {
    switch (t) {
    case Task::transcribe: return "transcribe";
    case Task::extract: return "extract";
    case Task::freeform_match: return "freeform_match";
    }
    return "?";
}

std::optional<Task> parse_task(std::string_view name) {
    if (name == "transcribe") return Task::transcribe;
    if (name == "extract") return Task::extract;
    if (name == "freeform_match") return Task::freeform_match;
    return std::nullopt;
}

Manifest load_manifest(const std::filesystem::path& path) {
    Manifest m;
    m.root = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

    const auto lines = util::read_jsonl(path, m.errors);
    std::unordered_map<std::string, std::size_t> first_line_of_id;
    for (const auto& [line_no, doc] : lines) {
        auto entry = parse_entry(doc, line_no, m.errors);
        if (!entry) {
            continue;
        }
        const auto [it, inserted] = first_line_of_id.emplace(entry->sample_id, line_no);
        if (!inserted) {
            m.errors.push_back("line " + std::to_string(line_no) + ": duplicate sample_id '" +
                               entry->sample_id + "' (first seen on line " +
                               std::to_string(it->second) + ")");
            continue;
        }
        for (const std::string& img : entry->images) {
            const auto resolved = m.root / img;
            if (!std::filesystem::exists(resolved)) {
                m.warnings.push_back("line " + std::to_string(line_no) + ": image not found: " +
                                     resolved.string());
            }
        }
        m.entries.push_back(std::move(*entry));
    }
    if (m.entries.empty()) {
        std::string detail;
        for (const std::string& e : m.errors) {
            detail += "\n  " + e;
        }
        throw Error("no valid entries in manifest " + path.string() + detail);
    }
    return m;
}

ManifestStats stats(const Manifest& m) {
    ManifestStats s;
    for (const ManifestEntry& e : m.entries) {
        ++s.by_language[e.language];
        if (e.doc_type) {
            ++s.by_doc_type[std::string(schemas::to_string(*e.doc_type))];
        }
        ++s.by_task[to_string(e.task)];
        ++s.total;
    }
    return s;
}

} // namespace ocrkit::datasets
