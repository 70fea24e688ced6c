// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ocrkit/error.hpp"

namespace ocrkit::schemas {

/// The nine supported government document types.
enum class DocType {
    aadhaar,
    cancelled_cheque,
    car_fitness,
    car_permit,
    driving_licence,
    insurance,
    pan,
    puc,
    rc,
};

inline constexpr std::array<DocType, 9> kAllDocTypes = {
    DocType::aadhaar,      DocType::cancelled_cheque, DocType::car_fitness,
    DocType::car_permit,   DocType::driving_licence,  DocType::insurance,
    DocType::pan,          DocType::puc,              DocType::rc,
};

std::string_view to_string(DocType t);
std::optional<DocType> parse_doc_type(std::string_view name);
std::string known_doc_types(); // comma-joined, for error messages

/// One extraction schema: the prompt is stored verbatim as data; `fields`
/// keeps the exact spelling used in the prompt (including any stray
/// whitespace), while lookups go through the trimmed form.
struct DocumentSchema {
    DocType doc_type;
    std::vector<std::string> fields;
    std::string prompt;

    /// True if `key` (already trimmed) names a schema field after trimming.
    bool has_field(std::string_view key) const;
    std::vector<std::string> trimmed_fields() const;
};

class SchemaRegistry {
public:
    /// The built-in nine-document registry.
    static const SchemaRegistry& bundled();

    /// Loads a registry from a JSON file: {"<doc_type>": {"fields": [...],
    /// "prompt": "..."}}. Throws Error on unreadable or malformed input.
    static SchemaRegistry load(const std::filesystem::path& path);

    const DocumentSchema& schema(DocType t) const;
    const std::vector<DocumentSchema>& all() const { return schemas_; }

private:
    std::vector<DocumentSchema> schemas_;
};

/// A document-tagged set of extracted or ground-truth field values.
/// Untagged records (doc_type empty) carry free-form fields, as used by the
/// substring-match evaluation of unstructured OCR output.
struct FieldRecord {
    std::optional<DocType> doc_type;
    std::vector<std::pair<std::string, std::string>> values; // insertion order
    std::size_t pages = 1;

    const std::string* find(std::string_view key) const;
    bool has(std::string_view key) const { return find(key) != nullptr; }
};

/// Returns the schema prompt verbatim.
std::string build_prompt(DocType t, const SchemaRegistry& registry = SchemaRegistry::bundled());

struct ParseResult {
    FieldRecord record;
    std::vector<std::string> violations;
};

/// Raised when no key-value object can be recovered from a backend output.
class OutputParseError : public Error {
public:
    explicit OutputParseError(std::string raw)
        : Error("no parseable key-value object in backend output"), raw_(std::move(raw)) {}
    const std::string& raw_output() const noexcept { return raw_; }

private:
    std::string raw_;
};

/// Extracts the first well-formed JSON object from `raw`, tolerating code
/// fences and surrounding prose. Keys are trimmed and matched case-sensitively
/// against the schema; anything else is reported as a violation, never kept.
ParseResult parse_output(std::string_view raw, DocType t,
                         const SchemaRegistry& registry = SchemaRegistry::bundled());

/// Flags empty values and keys outside the schema of the record's type.
std::vector<std::string> validate_record(const FieldRecord& rec,
                                         const SchemaRegistry& registry = SchemaRegistry::bundled());

/// Serializes a record to the key-value wire form the prompts request
/// (a JSON object, fields in record order).
std::string serialize_record(const FieldRecord& rec);

} // namespace ocrkit::schemas
