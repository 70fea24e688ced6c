// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/reporting/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <functional>
#include <set>

#include <json.hpp>

#include "ocrkit/error.hpp"

namespace ocrkit::reporting {

namespace {

std::string format_value(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

const char* mark_name(RankMark m) {
    switch (m) {
    case RankMark::best: return "best";
    case RankMark::second: return "second";
    case RankMark::none: return "";
    }
    return "";
}

// Unranked reports leave `marks` empty.
RankMark mark_at(const EvalReport& report, std::size_t i, std::size_t j) {
    if (i < report.marks.size() && j < report.marks[i].size()) {
        return report.marks[i][j];
    }
    return RankMark::none;
}

// Marks the best and second-best of one line of competing values.
void mark_line(std::vector<std::pair<std::size_t, double>>& entries, Direction direction,
               const std::function<void(std::size_t, RankMark)>& set) {
    if (entries.size() < 2) {
        return;
    }
    std::stable_sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
        return direction == Direction::lower_better ? a.second < b.second : a.second > b.second;
    });
    set(entries[0].first, RankMark::best);
    set(entries[1].first, RankMark::second);
}

std::vector<std::string> sorted_unique_models(std::span<const std::string> models) {
    std::vector<std::string> out(models.begin(), models.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string capitalized_unit(text::SegmentUnit unit) {
    std::string name = text::to_string(unit);
    if (!name.empty()) {
        name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    }
    return name;
}

} // namespace

void compute_marks(EvalReport& report) {
    report.marks.assign(report.cells.size(),
                        std::vector<RankMark>(report.columns.size(), RankMark::none));
    if (report.model_axis == ModelAxis::rows) {
        for (std::size_t j = 0; j < report.columns.size(); ++j) {
            std::vector<std::pair<std::size_t, double>> entries;
            for (std::size_t i = 0; i < report.cells.size(); ++i) {
                if (report.cells[i][j]) {
                    entries.emplace_back(i, *report.cells[i][j]);
                }
            }
            mark_line(entries, report.columns[j].direction,
                      [&](std::size_t i, RankMark m) { report.marks[i][j] = m; });
        }
    } else {
        for (std::size_t i = 0; i < report.cells.size(); ++i) {
            std::vector<std::pair<std::size_t, double>> entries;
            for (std::size_t j = 0; j < report.columns.size(); ++j) {
                if (report.cells[i][j]) {
                    entries.emplace_back(j, *report.cells[i][j]);
                }
            }
            // All columns of a row share a direction by construction.
            mark_line(entries, report.columns.empty() ? Direction::higher_better
                                                      : report.columns[0].direction,
                      [&](std::size_t j, RankMark m) { report.marks[i][j] = m; });
        }
    }
}

EvalReport build_ocr_report(std::span<const OcrScoreRow> rows) {
    if (rows.empty()) {
        throw Error("no scores to report");
    }
    std::vector<std::string> models;
    std::set<std::string> languages;
    std::vector<text::SegmentUnit> units;
    for (const OcrScoreRow& r : rows) {
        models.push_back(r.model);
        languages.insert(r.language);
        for (const auto& s : r.scores) {
            if (std::find(units.begin(), units.end(), s.unit) == units.end()) {
                units.push_back(s.unit);
            }
        }
    }

    EvalReport report;
    report.title = "OCR transcription (ANLS; lower is better)";
    report.model_axis = ModelAxis::rows;
    report.row_labels = sorted_unique_models(models);
    for (const std::string& lang : languages) {
        for (text::SegmentUnit unit : units) {
            report.columns.push_back({lang + " " + capitalized_unit(unit),
                                      Direction::lower_better, 2});
        }
    }
    report.cells.assign(report.row_labels.size(),
                        std::vector<std::optional<double>>(report.columns.size()));
    for (const OcrScoreRow& r : rows) {
        const auto row = static_cast<std::size_t>(
            std::find(report.row_labels.begin(), report.row_labels.end(), r.model) -
            report.row_labels.begin());
        for (const auto& s : r.scores) {
            const std::string label = r.language + " " + capitalized_unit(s.unit);
            for (std::size_t j = 0; j < report.columns.size(); ++j) {
                if (report.columns[j].label == label) {
                    report.cells[row][j] = s.scaled;
                }
            }
        }
    }
    compute_marks(report);
    return report;
}

EvalReport build_match_report(std::span<const MatchScoreRow> rows) {
    if (rows.empty()) {
        throw Error("no scores to report");
    }
    std::vector<std::string> models;
    std::set<std::string> languages;
    for (const MatchScoreRow& r : rows) {
        models.push_back(r.model);
        languages.insert(r.language);
    }
    EvalReport report;
    report.title = "Free-form field match (%Match; higher is better)";
    report.model_axis = ModelAxis::rows;
    report.row_labels = sorted_unique_models(models);
    for (const std::string& lang : languages) {
        report.columns.push_back({lang + " %Match", Direction::higher_better, 2});
    }
    report.cells.assign(report.row_labels.size(),
                        std::vector<std::optional<double>>(report.columns.size()));
    for (const MatchScoreRow& r : rows) {
        const auto row = static_cast<std::size_t>(
            std::find(report.row_labels.begin(), report.row_labels.end(), r.model) -
            report.row_labels.begin());
        for (std::size_t j = 0; j < report.columns.size(); ++j) {
            if (report.columns[j].label == r.language + " %Match") {
                report.cells[row][j] = r.score.percent;
            }
        }
    }
    compute_marks(report);
    return report;
}

EvalReport build_extraction_report(std::span<const ExtractionScoreRow> rows) {
    if (rows.empty()) {
        throw Error("no scores to report");
    }
    std::vector<std::string> models;
    for (const ExtractionScoreRow& r : rows) {
        models.push_back(r.model);
    }
    const std::vector<std::string> model_order = sorted_unique_models(models);

    EvalReport report;
    report.title = "Document-wise Exact Match (EM %; higher is better)";
    report.corner_label = "Doc Type";
    report.model_axis = ModelAxis::columns;
    for (const std::string& m : model_order) {
        report.columns.push_back({m, Direction::higher_better, 2});
    }

    for (schemas::DocType t : schemas::kAllDocTypes) {
        const bool present = std::any_of(rows.begin(), rows.end(), [&](const auto& r) {
            return r.doc_type == t;
        });
        if (present) {
            report.row_labels.emplace_back(schemas::to_string(t));
        }
    }
    report.row_labels.emplace_back("Grand Total");
    report.cells.assign(report.row_labels.size(),
                        std::vector<std::optional<double>>(report.columns.size()));

    for (const ExtractionScoreRow& r : rows) {
        const auto row = static_cast<std::size_t>(
            std::find(report.row_labels.begin(), report.row_labels.end(),
                      std::string(schemas::to_string(r.doc_type))) -
            report.row_labels.begin());
        const auto col = static_cast<std::size_t>(
            std::find(model_order.begin(), model_order.end(), r.model) - model_order.begin());
        report.cells[row][col] = r.score.doc_em;
    }
    // Grand Total: macro average over the document-type rows.
    const std::size_t total_row = report.row_labels.size() - 1;
    for (std::size_t j = 0; j < report.columns.size(); ++j) {
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < total_row; ++i) {
            if (report.cells[i][j]) {
                sum += *report.cells[i][j];
                ++n;
            }
        }
        if (n > 0) {
            report.cells[total_row][j] = sum / static_cast<double>(n);
        }
    }
    compute_marks(report);
    return report;
}

EvalReport build_extraction_summary(std::span<const ExtractionSummaryRow> rows) {
    if (rows.empty()) {
        throw Error("no scores to report");
    }
    std::vector<std::string> models;
    for (const auto& r : rows) {
        models.push_back(r.model);
    }
    EvalReport report;
    report.title = "Structured extraction summary (EM/PM/Mean %; higher is better)";
    report.model_axis = ModelAxis::rows;
    report.row_labels = sorted_unique_models(models);
    report.columns = {{"EM", Direction::higher_better, 2},
                      {"PM", Direction::higher_better, 2},
                      {"Mean", Direction::higher_better, 2},
                      {"Spurious", Direction::lower_better, 0}};
    report.cells.assign(report.row_labels.size(),
                        std::vector<std::optional<double>>(report.columns.size()));
    for (const auto& r : rows) {
        const auto row = static_cast<std::size_t>(
            std::find(report.row_labels.begin(), report.row_labels.end(), r.model) -
            report.row_labels.begin());
        report.cells[row][0] = r.dataset.doc_em;
        report.cells[row][1] = r.dataset.doc_pm;
        report.cells[row][2] = r.dataset.mean;
        report.cells[row][3] = static_cast<double>(r.dataset.spurious_fields);
    }
    compute_marks(report);
    return report;
}

std::string render(const EvalReport& report, Format format) {
    std::string out;
    if (format == Format::markdown) {
        if (!report.title.empty()) {
            out += "## " + report.title + "\n\n";
        }
        out += "| " + report.corner_label + " |";
        for (const ReportColumn& c : report.columns) {
            out += " " + c.label + " |";
        }
        out += "\n|---|";
        for (std::size_t j = 0; j < report.columns.size(); ++j) {
            out += "---:|";
        }
        out += "\n";
        for (std::size_t i = 0; i < report.row_labels.size(); ++i) {
            out += "| " + report.row_labels[i] + " |";
            for (std::size_t j = 0; j < report.columns.size(); ++j) {
                out += " ";
                if (!report.cells[i][j]) {
                    out += "-";
                } else {
                    const std::string v =
                        format_value(*report.cells[i][j], report.columns[j].decimals);
                    switch (mark_at(report, i, j)) {
                    case RankMark::best: out += "**" + v + "**"; break;
                    case RankMark::second: out += "<u>" + v + "</u>"; break;
                    case RankMark::none: out += v; break;
                    }
                }
                out += " |";
            }
            out += "\n";
        }
        if (!report.provenance.empty()) {
            out += "\n";
            for (const auto& [key, value] : report.provenance) {
                out += "- " + key + ": " + value + "\n";
            }
        }
        return out;
    }

    // CSV
    for (const auto& [key, value] : report.provenance) {
        out += "# " + key + ": " + value + "\n";
    }
    out += csv_escape(report.corner_label);
    for (const ReportColumn& c : report.columns) {
        out += "," + csv_escape(c.label);
        out += "," + csv_escape(c.label + " mark");
    }
    out += "\n";
    for (std::size_t i = 0; i < report.row_labels.size(); ++i) {
        out += csv_escape(report.row_labels[i]);
        for (std::size_t j = 0; j < report.columns.size(); ++j) {
            out += ",";
            if (report.cells[i][j]) {
                out += format_value(*report.cells[i][j], report.columns[j].decimals);
            }
            out += ",";
            out += mark_name(mark_at(report, i, j));
        }
        out += "\n";
    }
    return out;
}

std::string machine_summary(const EvalReport& report) {
    std::string out;
    nlohmann::ordered_json prov = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.provenance) {
        prov[key] = value;
    }
    nlohmann::ordered_json head = nlohmann::ordered_json::object();
    head["report"] = report.title;
    head["provenance"] = prov;
    out += head.dump();
    out += '\n';
    for (std::size_t i = 0; i < report.row_labels.size(); ++i) {
        for (std::size_t j = 0; j < report.columns.size(); ++j) {
            if (!report.cells[i][j]) {
                continue;
            }
            nlohmann::ordered_json line = nlohmann::ordered_json::object();
            line["report"] = report.title;
            line["row"] = report.row_labels[i];
            line["column"] = report.columns[j].label;
            line["value"] = *report.cells[i][j];
            line["direction"] = report.columns[j].direction == Direction::lower_better
                                    ? "lower_better"
                                    : "higher_better";
            line["mark"] = mark_name(mark_at(report, i, j));
            out += line.dump();
            out += '\n';
        }
    }
    return out;
}

} // namespace ocrkit::reporting
