// SPDX-License-Identifier: Apache-2.0
//
// ocrkit command-line interface: run backends over a manifest, score the
// predictions, project decoding latency, plan page tilings, and print the
// bundled extraction prompts.
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "ocrkit/backends/backend.hpp"
#include "ocrkit/backends/cache.hpp"
#include "ocrkit/datasets/manifest.hpp"
#include "ocrkit/error.hpp"
#include "ocrkit/latency/model.hpp"
#include "ocrkit/metrics/scores.hpp"
#include "ocrkit/reporting/report.hpp"
#include "ocrkit/schemas/schemas.hpp"
#include "ocrkit/tiling/tiler.hpp"
#include "ocrkit/util/digest.hpp"
#include "ocrkit/util/jsonl.hpp"

#ifdef OCRKIT_HAVE_OPENCV
#include "ocrkit/tiling/image_io.hpp"
#endif

namespace {

using namespace ocrkit;

constexpr const char* kDefaultOcrPrompt = "Extract all text from this document image.";

struct CommonFlags {
    std::string manifest;
    std::vector<std::string> predictions;
    std::string out;
    std::string format = "both"; // md, csv, both
    bool case_fold = false;
    int concurrency = 1;
};

text::NormalizationPolicy policy_from(const CommonFlags& flags) {
    text::NormalizationPolicy policy;
    policy.case_fold = flags.case_fold;
    return policy;
}

metrics::Execution execution_from(const CommonFlags& flags) {
    metrics::set_worker_threads(flags.concurrency);
    return flags.concurrency > 1 ? metrics::Execution::parallel : metrics::Execution::serial;
}

// model -> sample_id -> record
using PredictionsByModel =
    std::map<std::string, std::map<std::string, backends::PredictionRecord>>;

PredictionsByModel load_predictions(const std::vector<std::string>& paths,
                                    std::vector<std::pair<std::string, std::string>>& provenance) {
    PredictionsByModel by_model;
    for (const std::string& path : paths) {
        std::vector<std::string> errors;
        const auto lines = util::read_jsonl(path, errors);
        if (!errors.empty()) {
            throw Error("bad predictions file " + path + ": " + errors.front());
        }
        for (const auto& [line_no, doc] : lines) {
            auto rec = backends::parse_prediction(doc.dump());
            by_model[rec.model].emplace(rec.sample_id, std::move(rec));
        }
        provenance.emplace_back("predictions_digest", util::sha256_file(path));
    }
    if (by_model.empty()) {
        throw Error("no prediction records loaded");
    }
    return by_model;
}

void require_alignment(const datasets::Manifest& manifest, const PredictionsByModel& by_model) {
    for (const auto& [model, records] : by_model) {
        std::vector<std::string> missing;
        for (const auto& entry : manifest.entries) {
            if (!records.contains(entry.sample_id)) {
                missing.push_back(entry.sample_id);
            }
        }
        if (!missing.empty()) {
            std::string detail = missing.front();
            if (missing.size() > 1) {
                detail += " (+" + std::to_string(missing.size() - 1) + " more)";
            }
            throw Error("model '" + model + "' has no prediction for sample " + detail);
        }
    }
}

void write_reports(const std::filesystem::path& out_dir, const std::string& base,
                   const reporting::EvalReport& report, const std::string& format,
                   std::string& summary_accum) {
    std::filesystem::create_directories(out_dir);
    if (format == "md" || format == "both") {
        util::write_file_atomic(out_dir / (base + ".md"),
                                reporting::render(report, reporting::Format::markdown));
    }
    if (format == "csv" || format == "both") {
        util::write_file_atomic(out_dir / (base + ".csv"),
                                reporting::render(report, reporting::Format::csv));
    }
    summary_accum += reporting::machine_summary(report);
}

// ---------------------------------------------------------------- run

struct RunFlags : CommonFlags {
    std::string backend;
    std::string model_override;
    std::string cache_dir;
    std::string ocr_prompt = kDefaultOcrPrompt;
    unsigned seed = 0;
};

int cmd_run(const RunFlags& flags) {
    const auto manifest = datasets::load_manifest(flags.manifest);
    for (const auto& w : manifest.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    for (const auto& e : manifest.errors) {
        std::cerr << "error: " << e << "\n";
    }

    backends::BackendSpec spec = backends::load_backend_spec(flags.backend);
    if (!flags.model_override.empty()) {
        spec.model = flags.model_override;
    }
    if (flags.concurrency > 1) {
        spec.max_concurrency = flags.concurrency;
    }
    spec.seed = flags.seed;
    auto backend = backends::make_backend(spec);

    std::optional<backends::PredictionCache> cache;
    if (!flags.cache_dir.empty()) {
        cache.emplace(flags.cache_dir);
    }

    const auto& registry = schemas::SchemaRegistry::bundled();
    const auto prompt_for = [&](const datasets::ManifestEntry& entry) {
        return entry.task == datasets::Task::extract
                   ? schemas::build_prompt(*entry.doc_type, registry)
                   : flags.ocr_prompt;
    };

    // Resolve from cache first; only misses hit the backend.
    std::vector<backends::PredictionRecord> results(manifest.entries.size());
    std::vector<backends::Request> misses;
    std::vector<std::size_t> miss_index;
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
        const auto& entry = manifest.entries[i];
        const std::string prompt = prompt_for(entry);
        if (cache) {
            const backends::PredictionCache::Key key{entry.sample_id, spec.model,
                                                     util::sha256_hex(prompt)};
            if (auto hit = cache->get(key)) {
                results[i] = std::move(*hit);
                continue;
            }
        }
        backends::Request request;
        request.sample_id = entry.sample_id;
        request.prompt = prompt;
        for (const auto& img : entry.images) {
            request.images.push_back(manifest.root / img);
        }
        miss_index.push_back(i);
        misses.push_back(std::move(request));
    }

    const auto fresh = backends::run_requests(*backend, misses, spec.max_concurrency);
    std::size_t errors = 0;
    for (std::size_t k = 0; k < fresh.size(); ++k) {
        const std::size_t i = miss_index[k];
        results[i] = fresh[k];
        if (!fresh[k].ok()) {
            ++errors;
            std::cerr << "error: sample " << fresh[k].sample_id << ": " << *fresh[k].error
                      << "\n";
            continue;
        }
        if (cache) {
            // error records are never cached, so they get retried next run
            const backends::PredictionCache::Key key{
                manifest.entries[i].sample_id, spec.model,
                util::sha256_hex(prompt_for(manifest.entries[i]))};
            cache->put(key, fresh[k]);
        }
    }

    std::string body;
    for (const auto& rec : results) {
        body += backends::serialize_prediction(rec);
        body += '\n';
    }
    util::write_file_atomic(flags.out, body);
    std::cerr << results.size() << " records (" << misses.size() << " requested, "
              << results.size() - misses.size() << " cached, " << errors << " errors) -> "
              << flags.out << "\n";
    return errors == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateFlags : CommonFlags {
    std::vector<std::string> units; // empty -> word + char
};

int cmd_evaluate(const EvaluateFlags& flags) {
    const auto manifest = datasets::load_manifest(flags.manifest);
    std::vector<std::pair<std::string, std::string>> provenance;
    provenance.emplace_back("manifest_digest", util::sha256_file(flags.manifest));
    const auto by_model = load_predictions(flags.predictions, provenance);
    require_alignment(manifest, by_model);

    const auto policy = policy_from(flags);
    const auto exec = execution_from(flags);
    provenance.emplace_back("policy", policy.describe());

    std::vector<text::SegmentUnit> units;
    for (const std::string& name : flags.units) {
        const auto unit = text::parse_unit(name);
        if (!unit) {
            throw Error("unknown unit '" + name + "' (expected word, char, or grapheme)");
        }
        units.push_back(*unit);
    }
    if (units.empty()) {
        units = {text::SegmentUnit::word, text::SegmentUnit::codepoint};
    }
    {
        std::string names;
        for (const auto u : units) {
            names += names.empty() ? "" : ",";
            names += text::to_string(u);
        }
        provenance.emplace_back("units", names);
    }

    std::size_t error_records = 0;
    std::vector<reporting::OcrScoreRow> ocr_rows;
    std::vector<reporting::MatchScoreRow> match_rows;
    for (const auto& [model, records] : by_model) {
        std::map<std::string, std::vector<metrics::TranscriptPair>> pairs_by_language;
        std::map<std::string, metrics::FreeFormMatchScore> match_by_language;

        for (const auto& entry : manifest.entries) {
            const auto& rec = records.at(entry.sample_id);
            if (!rec.ok()) {
                ++error_records; // scored as an empty output
            }
            if (entry.task == datasets::Task::transcribe) {
                pairs_by_language[entry.language].push_back(
                    {text::normalize(rec.ok() ? rec.output_text : "", policy, entry.language),
                     text::normalize(entry.gt_text, policy, entry.language)});
            } else if (entry.task == datasets::Task::freeform_match) {
                const auto score = metrics::free_form_match(
                    *entry.gt_fields,
                    text::normalize(rec.ok() ? rec.output_text : "", policy), policy);
                auto& acc = match_by_language[entry.language];
                acc.matched += score.matched;
                acc.total += score.total;
            }
        }

        for (const auto& [language, pairs] : pairs_by_language) {
            reporting::OcrScoreRow row{model, language, {}};
            for (const auto unit : units) {
                row.scores.push_back(metrics::anls(pairs, unit, exec));
            }
            ocr_rows.push_back(std::move(row));
        }
        for (auto& [language, acc] : match_by_language) {
            acc.percent = acc.total == 0 ? 0.0
                                         : 100.0 * static_cast<double>(acc.matched) /
                                               static_cast<double>(acc.total);
            match_rows.push_back({model, language, acc});
        }
    }
    provenance.emplace_back("error_records", std::to_string(error_records));

    std::string summary;
    if (!ocr_rows.empty()) {
        auto report = reporting::build_ocr_report(ocr_rows);
        report.provenance = provenance;
        write_reports(flags.out, "anls", report, flags.format, summary);
    }
    if (!match_rows.empty()) {
        auto report = reporting::build_match_report(match_rows);
        report.provenance = provenance;
        write_reports(flags.out, "match", report, flags.format, summary);
    }
    if (summary.empty()) {
        throw Error("manifest has no transcribe or freeform_match entries");
    }
    util::write_file_atomic(std::filesystem::path(flags.out) / "summary.jsonl", summary);
    return 0;
}

// ---------------------------------------------------------------- extract-eval

struct ExtractFlags : CommonFlags {
    std::string schemas_file;
};

int cmd_extract_eval(const ExtractFlags& flags) {
    const auto manifest = datasets::load_manifest(flags.manifest);
    std::vector<std::pair<std::string, std::string>> provenance;
    provenance.emplace_back("manifest_digest", util::sha256_file(flags.manifest));
    const auto by_model = load_predictions(flags.predictions, provenance);
    require_alignment(manifest, by_model);

    const auto registry = flags.schemas_file.empty()
                              ? schemas::SchemaRegistry::bundled()
                              : schemas::SchemaRegistry::load(flags.schemas_file);
    const auto policy = policy_from(flags);
    provenance.emplace_back("policy", policy.describe());

    std::vector<reporting::ExtractionScoreRow> report_rows;
    std::vector<reporting::ExtractionSummaryRow> summary_rows;
    std::size_t parse_failures = 0;
    std::size_t violations = 0;
    for (const auto& [model, records] : by_model) {
        std::map<schemas::DocType, std::vector<metrics::ExtractionScore>> by_type;
        std::vector<metrics::ExtractionScore> all_docs;
        for (const auto& entry : manifest.entries) {
            if (entry.task != datasets::Task::extract) {
                continue;
            }
            const auto& rec = records.at(entry.sample_id);
            schemas::FieldRecord parsed;
            parsed.doc_type = entry.doc_type;
            if (rec.ok()) {
                try {
                    auto res = schemas::parse_output(rec.output_text, *entry.doc_type, registry);
                    violations += res.violations.size();
                    parsed = std::move(res.record);
                } catch (const schemas::OutputParseError&) {
                    ++parse_failures; // scored as an empty prediction
                }
            } else {
                ++parse_failures;
            }
            auto score = metrics::score_extraction(parsed, *entry.gt_fields, policy);
            by_type[*entry.doc_type].push_back(score);
            all_docs.push_back(std::move(score));
        }
        if (all_docs.empty()) {
            throw Error("manifest has no extract entries");
        }
        for (const auto& [type, scores] : by_type) {
            report_rows.push_back({model, type, metrics::aggregate_dataset(scores)});
        }
        summary_rows.push_back({model, metrics::aggregate_dataset(all_docs)});
    }
    provenance.emplace_back("parse_failures", std::to_string(parse_failures));
    provenance.emplace_back("protocol_violations", std::to_string(violations));

    std::string summary;
    auto em_report = reporting::build_extraction_report(report_rows);
    em_report.provenance = provenance;
    write_reports(flags.out, "extraction_em", em_report, flags.format, summary);

    auto summary_report = reporting::build_extraction_summary(summary_rows);
    summary_report.provenance = provenance;
    write_reports(flags.out, "extraction_summary", summary_report, flags.format, summary);

    util::write_file_atomic(std::filesystem::path(flags.out) / "summary.jsonl", summary);
    return 0;
}

// ---------------------------------------------------------------- latency

struct LatencyFlags : CommonFlags {
    std::string profile;
    double ttft = 0.125;
    double inter_token = 0.004;
    double words = 200.0;
    std::vector<std::string> groups; // lang=Group, or *=Group for the fallback
};

int cmd_latency(const LatencyFlags& flags) {
    reporting::EvalReport report;
    std::vector<std::pair<std::string, std::string>> provenance;

    if (!flags.predictions.empty()) {
        // measured mode: summarize end-to-end seconds per language group
        const auto manifest = datasets::load_manifest(flags.manifest);
        const auto by_model = load_predictions(flags.predictions, provenance);
        require_alignment(manifest, by_model);

        latency::Grouping grouping;
        grouping.order = {"English", "Hindi", "Others"};
        grouping.by_language = {{"en", "English"}, {"hi", "Hindi"}};
        grouping.fallback = "Others";
        if (!flags.groups.empty()) {
            grouping.order.clear();
            grouping.by_language.clear();
            grouping.fallback.reset();
            for (const std::string& g : flags.groups) {
                const auto eq = g.find('=');
                if (eq == std::string::npos) {
                    throw Error("--group expects language=Group, got '" + g + "'");
                }
                const std::string lang = g.substr(0, eq);
                const std::string group = g.substr(eq + 1);
                if (std::find(grouping.order.begin(), grouping.order.end(), group) ==
                    grouping.order.end()) {
                    grouping.order.push_back(group);
                }
                if (lang == "*") {
                    grouping.fallback = group;
                } else {
                    grouping.by_language[lang] = group;
                }
            }
        }

        report.title = "Average end-to-end OCR latency (seconds)";
        report.model_axis = reporting::ModelAxis::rows;
        std::set<std::string> group_columns;
        std::map<std::pair<std::string, std::string>, latency::LatencySummary> cells;
        std::vector<latency::TimingTrace> traces;
        for (const auto& [model, records] : by_model) {
            report.row_labels.push_back(model);
            std::vector<std::pair<std::string, double>> samples;
            for (const auto& entry : manifest.entries) {
                const auto& rec = records.at(entry.sample_id);
                if (!rec.ok()) {
                    continue;
                }
                samples.emplace_back(entry.language, rec.end_to_end_s);
                if (rec.trace && rec.trace->token_count >= 2) {
                    traces.push_back(*rec.trace);
                }
            }
            for (const auto& s : latency::summarize_latency(samples, grouping)) {
                group_columns.insert(s.group);
                cells[{model, s.group}] = s;
            }
        }
        for (const std::string& group : grouping.order) {
            if (group_columns.contains(group)) {
                report.columns.push_back({group, reporting::Direction::lower_better, 2});
            }
        }
        report.cells.assign(report.row_labels.size(),
                            std::vector<std::optional<double>>(report.columns.size()));
        for (std::size_t i = 0; i < report.row_labels.size(); ++i) {
            for (std::size_t j = 0; j < report.columns.size(); ++j) {
                const auto it = cells.find({report.row_labels[i], report.columns[j].label});
                if (it != cells.end()) {
                    report.cells[i][j] = it->second.mean_seconds;
                }
            }
        }
        reporting::compute_marks(report);
        if (!traces.empty()) {
            const auto params = latency::estimate_params(traces);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6f", params.ttft_s);
            provenance.emplace_back("estimated_ttft_s", buf);
            std::snprintf(buf, sizeof(buf), "%.6f", params.inter_token_s);
            provenance.emplace_back("estimated_inter_token_s", buf);
        }
        provenance.emplace_back("mode", "measured sequential");
    } else {
        // projection mode over a token profile
        const auto profiles = flags.profile.empty() ? latency::bundled_profiles()
                                                    : latency::load_profiles(flags.profile);
        const latency::LatencyParams params{flags.ttft, flags.inter_token};
        if (params.ttft_s < 0 || params.inter_token_s <= 0) {
            throw Error("ttft must be >= 0 and inter-token > 0");
        }

        report.title = "Token efficiency and projected decoding latency";
        report.corner_label = "Language";
        const std::string words_label = std::to_string(static_cast<long long>(flags.words));
        report.columns = {
            {"Tokens/word", reporting::Direction::lower_better, 1},
            {"Tokens (" + words_label + " words)", reporting::Direction::lower_better, 1},
            {"Latency (" + words_label + " words, s)", reporting::Direction::lower_better, 1}};
        for (const auto& p : profiles) {
            const double tokens = latency::project_tokens(flags.words, p);
            report.row_labels.push_back(p.language);
            report.cells.push_back(
                {p.tokens_per_word, tokens, latency::project_latency(tokens, params)});
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", params.ttft_s);
        provenance.emplace_back("ttft_s", buf);
        std::snprintf(buf, sizeof(buf), "%.6f", params.inter_token_s);
        provenance.emplace_back("inter_token_s", buf);
        provenance.emplace_back("profile_source",
                                flags.profile.empty() ? "bundled" : flags.profile);
    }

    report.provenance = std::move(provenance);
    std::fputs(reporting::render(report, reporting::Format::markdown).c_str(), stdout);
    if (!flags.out.empty()) {
        std::string summary;
        write_reports(flags.out, "latency", report, flags.format, summary);
        util::write_file_atomic(std::filesystem::path(flags.out) / "summary.jsonl", summary);
    }
    return 0;
}

// ---------------------------------------------------------------- tile

struct TileFlags {
    int width = 0;
    int height = 0;
    int tile_side = 336;
    int max_tiles = 9;
    int rotate = 0;
    std::size_t tokens_per_tile = 0;
    bool no_global = false;
    std::string format = "text"; // text or csv
    std::string image;
    std::string out_dir;
};

int cmd_tile(const TileFlags& flags) {
    tiling::TileLayout layout;
    if (!flags.image.empty()) {
#ifdef OCRKIT_HAVE_OPENCV
        if (flags.out_dir.empty()) {
            throw Error("--image requires --out-dir");
        }
        layout = tiling::write_crops(flags.image, flags.tile_side, flags.max_tiles, flags.rotate,
                                     flags.out_dir);
#else
        throw Error("this build has no image support; use geometry flags instead");
#endif
    } else {
        if (flags.width < 1 || flags.height < 1) {
            throw Error("--width and --height are required without --image");
        }
        const auto page = tiling::apply_rotation({flags.width, flags.height}, flags.rotate);
        layout = tiling::plan_layout(page, flags.tile_side, flags.max_tiles, !flags.no_global);
    }

    if (flags.format == "csv") {
        std::printf("row,col,x0,y0,x1,y1\n");
        for (int r = 0; r < layout.rows; ++r) {
            for (int c = 0; c < layout.cols; ++c) {
                const auto& rect = layout.crops[static_cast<std::size_t>(r) * layout.cols + c];
                std::printf("%d,%d,%d,%d,%d,%d\n", r, c, rect.x0, rect.y0, rect.x1, rect.y1);
            }
        }
    } else {
        std::printf("grid: %d rows x %d cols (budget %d)\n", layout.rows, layout.cols,
                    flags.max_tiles);
        std::printf("tile side: %d\n", layout.tile_side);
        std::printf("canvas: %dx%d\n", layout.resized_width, layout.resized_height);
        std::printf("global view: %s\n", layout.includes_global ? "yes" : "no");
        for (int r = 0; r < layout.rows; ++r) {
            for (int c = 0; c < layout.cols; ++c) {
                const auto& rect = layout.crops[static_cast<std::size_t>(r) * layout.cols + c];
                std::printf("crop %d_%d: x [%d,%d) y [%d,%d)\n", r, c, rect.x0, rect.x1, rect.y0,
                            rect.y1);
            }
        }
    }
    if (flags.tokens_per_tile > 0) {
        std::printf("visual tokens (%zu/tile): %zu\n", flags.tokens_per_tile,
                    tiling::visual_token_estimate(layout, flags.tokens_per_tile));
    }
    return 0;
}

// ---------------------------------------------------------------- prompt

int cmd_prompt(const std::string& doc_type_name, const std::string& schemas_file) {
    const auto doc_type = schemas::parse_doc_type(doc_type_name);
    if (!doc_type) {
        throw Error("unknown document type '" + doc_type_name +
                    "'; expected one of: " + schemas::known_doc_types());
    }
    const auto registry = schemas_file.empty() ? schemas::SchemaRegistry::bundled()
                                               : schemas::SchemaRegistry::load(schemas_file);
    const std::string prompt = schemas::build_prompt(*doc_type, registry);
    std::fwrite(prompt.data(), 1, prompt.size(), stdout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multilingual OCR evaluation and deployment benchmarking toolkit"};
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "Run a backend over a manifest, writing predictions");
    run->add_option("--manifest", run_flags.manifest, "Manifest file (JSON lines)")->required();
    run->add_option("--backend", run_flags.backend,
                    "Backend spec file, or 'mock' / 'mock:<script.json>'")
        ->required();
    run->add_option("--model", run_flags.model_override, "Override the model label");
    run->add_option("--out", run_flags.out, "Predictions output file")->required();
    run->add_option("--cache", run_flags.cache_dir, "Prediction cache directory");
    run->add_option("--concurrency", run_flags.concurrency,
                    "Max in-flight requests (1 = sequential)");
    run->add_option("--ocr-prompt", run_flags.ocr_prompt,
                    "Prompt for transcription tasks");
    run->add_option("--seed", run_flags.seed, "Seed for mock-backend jitter");

    EvaluateFlags eval_flags;
    auto* evaluate =
        app.add_subcommand("evaluate", "Score transcription / free-form match predictions");
    evaluate->add_option("--manifest", eval_flags.manifest, "Manifest file")->required();
    evaluate->add_option("--predictions", eval_flags.predictions, "Predictions file(s)")
        ->required();
    evaluate->add_option("--out", eval_flags.out, "Report output directory")->required();
    evaluate->add_option("--format", eval_flags.format, "md, csv, or both")
        ->check(CLI::IsMember({"md", "csv", "both"}));
    evaluate->add_option("--unit", eval_flags.units,
                         "Units to report (word, char, grapheme); default word+char");
    evaluate->add_flag("--case-fold", eval_flags.case_fold, "Case-insensitive comparison");
    evaluate->add_option("--concurrency", eval_flags.concurrency,
                         "Worker threads for corpus scoring");

    ExtractFlags extract_flags;
    auto* extract_eval =
        app.add_subcommand("extract-eval", "Score structured key-value extraction predictions");
    extract_eval->add_option("--manifest", extract_flags.manifest, "Manifest file")->required();
    extract_eval->add_option("--predictions", extract_flags.predictions, "Predictions file(s)")
        ->required();
    extract_eval->add_option("--out", extract_flags.out, "Report output directory")->required();
    extract_eval->add_option("--format", extract_flags.format, "md, csv, or both")
        ->check(CLI::IsMember({"md", "csv", "both"}));
    extract_eval->add_flag("--case-fold", extract_flags.case_fold,
                           "Case-insensitive field comparison");
    extract_eval->add_option("--schemas", extract_flags.schemas_file,
                             "Schema registry file (default: bundled)");

    LatencyFlags latency_flags;
    auto* latency_cmd = app.add_subcommand(
        "latency", "Project decoding latency from a token profile, or summarize measured runs");
    latency_cmd->add_option("--profile", latency_flags.profile,
                            "Token profile TSV (default: bundled ten-language profile)");
    latency_cmd->add_option("--ttft", latency_flags.ttft, "Time to first token, seconds");
    latency_cmd->add_option("--inter-token", latency_flags.inter_token,
                            "Inter-token latency, seconds per token");
    latency_cmd->add_option("--words", latency_flags.words, "Words to project");
    latency_cmd->add_option("--manifest", latency_flags.manifest,
                            "Manifest file (measured mode)");
    latency_cmd->add_option("--predictions", latency_flags.predictions,
                            "Timing-bearing predictions (switches to measured mode)");
    latency_cmd->add_option("--group", latency_flags.groups,
                            "language=Group mapping; '*=Group' sets the fallback");
    latency_cmd->add_option("--out", latency_flags.out, "Report output directory");
    latency_cmd->add_option("--format", latency_flags.format, "md, csv, or both")
        ->check(CLI::IsMember({"md", "csv", "both"}));

    TileFlags tile_flags;
    auto* tile = app.add_subcommand("tile", "Plan an aspect-ratio-aware page tiling");
    tile->add_option("--width", tile_flags.width, "Page width in pixels");
    tile->add_option("--height", tile_flags.height, "Page height in pixels");
    tile->add_option("--tile-side", tile_flags.tile_side, "Tile side in pixels");
    tile->add_option("--max-tiles", tile_flags.max_tiles, "Tile budget");
    tile->add_option("--rotate", tile_flags.rotate, "Quarter turns applied before planning");
    tile->add_option("--tokens-per-tile", tile_flags.tokens_per_tile,
                     "Also print the visual-token estimate");
    tile->add_flag("--no-global", tile_flags.no_global, "Omit the global view");
    tile->add_option("--format", tile_flags.format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));
    tile->add_option("--image", tile_flags.image, "Tile a raster image instead of bare geometry");
    tile->add_option("--out-dir", tile_flags.out_dir, "Crop output directory (with --image)");

    std::string prompt_doc_type;
    std::string prompt_schemas;
    auto* prompt = app.add_subcommand("prompt", "Print the extraction prompt for a document type");
    prompt->add_option("doc_type", prompt_doc_type, "One of: " + schemas::known_doc_types())
        ->required();
    prompt->add_option("--schemas", prompt_schemas, "Schema registry file (default: bundled)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2; --help exits 0
    }

    try {
        if (run->parsed()) return cmd_run(run_flags);
        if (evaluate->parsed()) return cmd_evaluate(eval_flags);
        if (extract_eval->parsed()) return cmd_extract_eval(extract_flags);
        if (latency_cmd->parsed()) return cmd_latency(latency_flags);
        if (tile->parsed()) return cmd_tile(tile_flags);
        if (prompt->parsed()) return cmd_prompt(prompt_doc_type, prompt_schemas);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
