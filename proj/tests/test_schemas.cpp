// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <fstream>

#include "ocrkit/schemas/schemas.hpp"
#include "ocrkit/util/jsonl.hpp"
#include "support.hpp"

using namespace ocrkit;
using schemas::DocType;
using schemas::FieldRecord;
using schemas::SchemaRegistry;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + 1)) {
        ++count;
    }
    return count;
}

FieldRecord synthetic_record(DocType t, const SchemaRegistry& registry) {
    FieldRecord rec;
    rec.doc_type = t;
    int i = 0;
    for (const std::string& field : registry.schema(t).trimmed_fields()) {
        rec.values.emplace_back(field, "value-" + std::to_string(i++));
    }
    return rec;
}

} // namespace

TEST_CASE("registry: nine schemas with the exact field counts") {
    const auto& registry = SchemaRegistry::bundled();
    const std::vector<std::pair<DocType, std::size_t>> expected = {
        {DocType::aadhaar, 6},   {DocType::cancelled_cheque, 3}, {DocType::car_fitness, 4},
        {DocType::car_permit, 8}, {DocType::driving_licence, 9}, {DocType::insurance, 7},
        {DocType::pan, 3},       {DocType::puc, 7},              {DocType::rc, 13},
    };
    REQUIRE(registry.all().size() == 9);
    for (const auto& [type, count] : expected) {
        CHECK_MESSAGE(registry.schema(type).fields.size() == count,
                      "doc_type=", schemas::to_string(type));
    }
    // the registration-certificate prompt spells one field with a trailing
    // space; the schema keeps it verbatim and trims only for lookups
    const auto& rc = registry.schema(DocType::rc);
    CHECK(std::find(rc.fields.begin(), rc.fields.end(), "Regn. No ") != rc.fields.end());
    CHECK(rc.has_field("Regn. No"));
}

TEST_CASE("doc type names round-trip") {
    for (DocType t : schemas::kAllDocTypes) {
        CHECK(schemas::parse_doc_type(schemas::to_string(t)) == t);
    }
    CHECK(!schemas::parse_doc_type("passport").has_value());
    CHECK(schemas::known_doc_types().find("aadhaar") != std::string::npos);
}

TEST_CASE("build_prompt: verbatim prompts") {
    const std::string pan = schemas::build_prompt(DocType::pan);
    CHECK(pan.find("\"Person Name\"") != std::string::npos);
    CHECK(pan.find("\"Pan Number\"") != std::string::npos);
    CHECK(pan.find("\"DOB\"") != std::string::npos);
    CHECK(pan.find("Person name will be above the father name.") != std::string::npos);

    const std::string cheque = schemas::build_prompt(DocType::cancelled_cheque);
    CHECK(count_occurrences(cheque, "\"") == 6); // exactly 3 quoted fields

    CHECK(schemas::build_prompt(DocType::aadhaar).find("Aadhar Number") != std::string::npos);

    for (DocType t : schemas::kAllDocTypes) {
        const std::string prompt = schemas::build_prompt(t);
        CHECK(prompt.find("omit them from the output without adding any extra text") !=
              std::string::npos);
        for (const std::string& field : SchemaRegistry::bundled().schema(t).fields) {
            CHECK_MESSAGE(count_occurrences(prompt, "\"" + field + "\"") == 1,
                          "doc=", schemas::to_string(t), " field=", field);
        }
    }
}

TEST_CASE("build_prompt: byte-equal to the checked-in prompt assets") {
    for (DocType t : schemas::kAllDocTypes) {
        const auto path = test::source_dir() / "assets" / "prompts" /
                          (std::string(schemas::to_string(t)) + ".txt");
        CHECK(schemas::build_prompt(t) == util::read_file(path));
    }
}

TEST_CASE("parse_output: clean object") {
    const auto res = schemas::parse_output(
        R"({"Person Name": "A B", "Pan Number": "ABCDE1234F", "DOB": "01/01/1990"})",
        DocType::pan);
    CHECK(res.violations.empty());
    REQUIRE(res.record.values.size() == 3);
    CHECK(*res.record.find("Pan Number") == "ABCDE1234F");
}

TEST_CASE("parse_output: fenced code block still parses, with a violation") {
    const auto res = schemas::parse_output(
        "```json\n{\"Person Name\": \"X\", \"DOB\": \"1/1/1999\"}\n```", DocType::pan);
    REQUIRE(res.record.values.size() == 2);
    CHECK(std::find(res.violations.begin(), res.violations.end(), "fenced output") !=
          res.violations.end());
}

TEST_CASE("parse_output: surrounding prose") {
    const auto res = schemas::parse_output(
        "Sure! Here is the extracted data: {\"DOB\": \"2/2/1992\"} Hope this helps.",
        DocType::pan);
    REQUIRE(res.record.values.size() == 1);
    CHECK(res.violations.size() == 1);
    CHECK(res.violations[0] == "extra text outside the key-value object");
}

TEST_CASE("parse_output: spurious fields are dropped and reported") {
    const auto res = schemas::parse_output(
        R"({"Person Name": "X", "Father Name": "Y"})", DocType::pan);
    REQUIRE(res.record.values.size() == 1);
    CHECK(!res.record.has("Father Name"));
    REQUIRE(res.violations.size() == 1);
    CHECK(res.violations[0] == "spurious field: Father Name");
}

TEST_CASE("parse_output: duplicate keys are flagged") {
    const auto res =
        schemas::parse_output(R"({"DOB": "1/1/1990", "DOB": "2/2/1992"})", DocType::pan);
    CHECK(std::find(res.violations.begin(), res.violations.end(), "duplicate key: DOB") !=
          res.violations.end());
}

TEST_CASE("parse_output: keys are trimmed; values stringified") {
    const auto res = schemas::parse_output(
        R"({" Pan Number ": "P123", "DOB": 1990, "Person Name": null})", DocType::pan);
    CHECK(*res.record.find("Pan Number") == "P123");
    CHECK(*res.record.find("DOB") == "1990");
    CHECK(*res.record.find("Person Name") == "");
    // the trailing-space field accepts the trimmed key
    const auto rc = schemas::parse_output(R"({"Regn. No": "KA01"})", DocType::rc);
    CHECK(*rc.record.find("Regn. No") == "KA01");
    CHECK(rc.violations.empty());
}

TEST_CASE("parse_output: no object raises an error that carries the raw text") {
    const std::string raw = "I could not find any fields.";
    try {
        schemas::parse_output(raw, DocType::pan);
        FAIL("expected OutputParseError");
    } catch (const schemas::OutputParseError& e) {
        CHECK(e.raw_output() == raw);
    }
    CHECK_THROWS_AS(schemas::parse_output("{\"unterminated\": ", DocType::pan),
                    schemas::OutputParseError);
}

TEST_CASE("parse_output: never returns keys outside the schema") {
    test::StringGen gen(6);
    for (int i = 0; i < 50; ++i) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        obj["DOB"] = "x";
        obj["junk-" + std::to_string(i)] = gen.next(5);
        const auto res = schemas::parse_output(obj.dump(), DocType::pan);
        const auto& schema = SchemaRegistry::bundled().schema(DocType::pan);
        for (const auto& [k, v] : res.record.values) {
            CHECK(schema.has_field(k));
        }
    }
}

TEST_CASE("validate_record") {
    const auto& registry = SchemaRegistry::bundled();
    SUBCASE("clean record") {
        CHECK(schemas::validate_record(synthetic_record(DocType::aadhaar, registry)).empty());
    }
    SUBCASE("empty value") {
        auto rec = synthetic_record(DocType::aadhaar, registry);
        rec.values[4].second = "";
        const auto violations = schemas::validate_record(rec);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0] == "empty value for field: Address");
    }
    SUBCASE("unknown field and duplicate key") {
        FieldRecord rec;
        rec.doc_type = DocType::pan;
        rec.values = {{"DOB", "a"}, {"DOB", "b"}, {"Nope", "c"}};
        const auto violations = schemas::validate_record(rec);
        CHECK(std::find(violations.begin(), violations.end(), "duplicate key: DOB") !=
              violations.end());
        CHECK(std::find(violations.begin(), violations.end(), "unknown field: Nope") !=
              violations.end());
    }
    SUBCASE("untagged record") {
        FieldRecord rec;
        rec.values = {{"anything", "x"}};
        CHECK(schemas::validate_record(rec).size() == 1);
    }
}

TEST_CASE("round trip: serialize then parse is lossless with zero violations") {
    const auto& registry = SchemaRegistry::bundled();
    for (DocType t : schemas::kAllDocTypes) {
        const FieldRecord rec = synthetic_record(t, registry);
        const std::string wire = schemas::serialize_record(rec);
        const auto res = schemas::parse_output(wire, t, registry);
        CHECK(res.violations.empty());
        CHECK(res.record.doc_type == rec.doc_type);
        CHECK(res.record.values == rec.values);
    }
}

TEST_CASE("registry: loading a user-supplied file") {
    const auto dir = std::filesystem::temp_directory_path() / "ocrkit_schema_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "registry.json";
    {
        std::ofstream out(path);
        out << R"({"documents": {"pan": {"fields": ["Person Name", "Pan Number", "DOB"],
                  "prompt": "give me the PAN fields"}}})";
    }
    const auto registry = SchemaRegistry::load(path);
    CHECK(registry.all().size() == 1);
    CHECK(schemas::build_prompt(DocType::pan, registry) == "give me the PAN fields");
    CHECK_THROWS_AS(registry.schema(DocType::rc), Error);
    CHECK_THROWS_AS(SchemaRegistry::load(dir / "missing.json"), Error);
    std::filesystem::remove_all(dir);
}
