// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/schemas/schemas.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ocrkit/embedded_assets.hpp"

namespace ocrkit::schemas {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kAsciiWs = " \t\r\n";

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(kAsciiWs);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(kAsciiWs);
    return s.substr(b, e - b + 1);
}

struct DocTypeName {
    DocType type;
    std::string_view name;
};

constexpr std::array<DocTypeName, 9> kDocTypeNames = {{
    {DocType::aadhaar, "aadhaar"},
    {DocType::cancelled_cheque, "cancelled_cheque"},
    {DocType::car_fitness, "car_fitness"},
    {DocType::car_permit, "car_permit"},
    {DocType::driving_licence, "driving_licence"},
    {DocType::insurance, "insurance"},
    {DocType::pan, "pan"},
    {DocType::puc, "puc"},
    {DocType::rc, "rc"},
}};

// Collects top-level object keys so duplicates survive parsing (the DOM
// silently keeps one copy).
class KeyCollector : public nlohmann::json_sax<ordered_json> {
public:
    std::vector<std::string> top_keys;

    bool key(string_t& val) override {
        if (depth_ == 1) {
            top_keys.push_back(val);
        }
        return true;
    }
    bool start_object(std::size_t) override { ++depth_; return true; }
    bool end_object() override { --depth_; return true; }
    bool start_array(std::size_t) override { return true; }
    bool end_array() override { return true; }
    bool null() override { return true; }
    bool boolean(bool) override { return true; }
    bool number_integer(number_integer_t) override { return true; }
    bool number_unsigned(number_unsigned_t) override { return true; }
    bool number_float(number_float_t, const string_t&) override { return true; }
    bool string(string_t&) override { return true; }
    bool binary(binary_t&) override { return true; }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
        return false;
    }

private:
    int depth_ = 0;
};

// Finds the span of the first balanced {...} starting at or after `from`,
// honouring string literals and escapes. Returns npos if none closes.
std::size_t matching_brace(std::string_view s, std::size_t open) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = open; i < s.size(); ++i) {
        const char c = s[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
        } else if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            if (--depth == 0) {
                return i;
            }
        }
    }
    return std::string_view::npos;
}

std::string stringify(const ordered_json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_null()) {
        return "";
    }
    return v.dump();
}

} // namespace

std::string_view to_string(DocType t) {
    for (const auto& [type, name] : kDocTypeNames) {
        if (type == t) {
            return name;
        }
    }
    return "?";
}

std::optional<DocType> parse_doc_type(std::string_view name) {
    for (const auto& [type, tname] : kDocTypeNames) {
        if (tname == name) {
            return type;
        }
    }
    return std::nullopt;
}

std::string known_doc_types() {
    std::string out;
    for (const auto& [type, name] : kDocTypeNames) {
        if (!out.empty()) {
            out += ", ";
        }
        out += name;
    }
    return out;
}

bool DocumentSchema::has_field(std::string_view key) const {
    return std::any_of(fields.begin(), fields.end(),
                       [&](const std::string& f) { return trim(f) == key; });
}

std::vector<std::string> DocumentSchema::trimmed_fields() const {
    std::vector<std::string> out;
    out.reserve(fields.size());
    for (const std::string& f : fields) {
        out.emplace_back(trim(f));
    }
    return out;
}

const SchemaRegistry& SchemaRegistry::bundled() {
    static const SchemaRegistry registry = [] {
        const auto schemas_json = embedded::asset("schemas.json");
        if (!schemas_json) {
            throw Error("bundled schemas.json missing");
        }
        SchemaRegistry r;
        const auto doc = ordered_json::parse(*schemas_json);
        for (const auto& [type, name] : kDocTypeNames) {
            const auto& entry = doc.at("documents").at(std::string(name));
            DocumentSchema schema;
            schema.doc_type = type;
            for (const auto& f : entry.at("fields")) {
                schema.fields.push_back(f.get<std::string>());
            }
            const auto prompt = embedded::asset(std::string(name) + ".txt");
            if (!prompt) {
                throw Error("bundled prompt asset missing for " + std::string(name));
            }
            schema.prompt.assign(*prompt);
            r.schemas_.push_back(std::move(schema));
        }
        return r;
    }();
    return registry;
}

SchemaRegistry SchemaRegistry::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open schema registry: " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    ordered_json doc;
    try {
        doc = ordered_json::parse(buf.str());
    } catch (const std::exception& e) {
        throw Error("malformed schema registry " + path.string() + ": " + e.what());
    }
    SchemaRegistry r;
    for (const auto& [name, entry] : doc.at("documents").items()) {
        const auto type = parse_doc_type(name);
        if (!type) {
            throw Error("unknown document type '" + name + "' in " + path.string() +
                        "; expected one of: " + known_doc_types());
        }
        DocumentSchema schema;
        schema.doc_type = *type;
        for (const auto& f : entry.at("fields")) {
            schema.fields.push_back(f.get<std::string>());
        }
        schema.prompt = entry.at("prompt").get<std::string>();
        r.schemas_.push_back(std::move(schema));
    }
    if (r.schemas_.empty()) {
        throw Error("schema registry has no documents: " + path.string());
    }
    return r;
}

const DocumentSchema& SchemaRegistry::schema(DocType t) const {
    for (const DocumentSchema& s : schemas_) {
        if (s.doc_type == t) {
            return s;
        }
    }
    throw Error("no schema for document type '" + std::string(to_string(t)) +
                "'; known types: " + known_doc_types());
}

const std::string* FieldRecord::find(std::string_view key) const {
    for (const auto& [k, v] : values) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

std::string build_prompt(DocType t, const SchemaRegistry& registry) {
    return registry.schema(t).prompt;
}

ParseResult parse_output(std::string_view raw, DocType t, const SchemaRegistry& registry) {
    const DocumentSchema& schema = registry.schema(t);

    ordered_json obj;
    std::size_t obj_begin = std::string_view::npos;
    for (std::size_t open = raw.find('{'); open != std::string_view::npos;
         open = raw.find('{', open + 1)) {
        const std::size_t close = matching_brace(raw, open);
        if (close == std::string_view::npos) {
            break;
        }
        const std::string_view slice = raw.substr(open, close - open + 1);
        obj = ordered_json::parse(slice, nullptr, false);
        if (!obj.is_discarded() && obj.is_object()) {
            obj_begin = open;
            break;
        }
    }
    if (obj_begin == std::string_view::npos) {
        throw OutputParseError(std::string(raw));
    }

    ParseResult result;
    result.record.doc_type = t;

    const std::size_t obj_end = matching_brace(raw, obj_begin) + 1;
    const std::string_view before = raw.substr(0, obj_begin);
    const std::string_view after = raw.substr(obj_end);
    if (before.find("```") != std::string_view::npos) {
        result.violations.emplace_back("fenced output");
    } else if (!trim(before).empty() || !trim(after).empty()) {
        result.violations.emplace_back("extra text outside the key-value object");
    }

    // Re-scan the accepted slice for duplicate top-level keys.
    {
        KeyCollector collector;
        ordered_json::sax_parse(raw.substr(obj_begin, obj_end - obj_begin), &collector);
        std::vector<std::string> seen;
        for (std::string& k : collector.top_keys) {
            const std::string trimmed(trim(k));
            if (std::find(seen.begin(), seen.end(), trimmed) != seen.end()) {
                result.violations.push_back("duplicate key: " + trimmed);
            } else {
                seen.push_back(trimmed);
            }
        }
    }

    for (const auto& [key, value] : obj.items()) {
        const std::string trimmed(trim(key));
        if (!schema.has_field(trimmed)) {
            result.violations.push_back("spurious field: " + trimmed);
            continue;
        }
        if (!result.record.has(trimmed)) {
            result.record.values.emplace_back(trimmed, stringify(value));
        }
    }
    return result;
}

std::vector<std::string> validate_record(const FieldRecord& rec, const SchemaRegistry& registry) {
    std::vector<std::string> violations;
    if (!rec.doc_type) {
        violations.emplace_back("untagged record (no document type)");
        return violations;
    }
    const DocumentSchema& schema = registry.schema(*rec.doc_type);
    std::vector<std::string_view> seen;
    for (const auto& [key, value] : rec.values) {
        if (!schema.has_field(key)) {
            violations.push_back("unknown field: " + key);
        }
        if (value.empty()) {
            violations.push_back("empty value for field: " + key);
        }
        if (std::find(seen.begin(), seen.end(), std::string_view(key)) != seen.end()) {
            violations.push_back("duplicate key: " + key);
        }
        seen.push_back(key);
    }
    return violations;
}

std::string serialize_record(const FieldRecord& rec) {
    ordered_json obj = ordered_json::object();
    for (const auto& [key, value] : rec.values) {
        obj[key] = value;
    }
    return obj.dump();
}

} // namespace ocrkit::schemas
