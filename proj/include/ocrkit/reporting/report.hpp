// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ocrkit/metrics/scores.hpp"
#include "ocrkit/schemas/schemas.hpp"

namespace ocrkit::reporting {

enum class Direction { lower_better, higher_better };
enum class RankMark { none, best, second };
enum class Format { markdown, csv };

/// Which axis carries the competing models; ranking marks are computed across
/// that axis and never mix values of different models' opponents.
enum class ModelAxis { rows, columns };

struct ReportColumn {
    std::string label;
    Direction direction = Direction::lower_better;
    int decimals = 2;
};

struct EvalReport {
    std::string title;
    std::string corner_label = "Model";
    ModelAxis model_axis = ModelAxis::rows;
    std::vector<std::string> row_labels;
    std::vector<ReportColumn> columns;
    std::vector<std::vector<std::optional<double>>> cells; // [row][column]
    std::vector<std::vector<RankMark>> marks;              // same shape as cells
    std::vector<std::pair<std::string, std::string>> provenance;
};

/// Fills `marks`: per line across the model axis, the best and second-best
/// values get marked; lines with fewer than two models get no marks.
void compute_marks(EvalReport& report);

struct OcrScoreRow {
    std::string model;
    std::string language;
    std::vector<metrics::AnlsScore> scores; // one per reported unit
};

/// ANLS table: rows are models, columns are language x unit, lower is better.
EvalReport build_ocr_report(std::span<const OcrScoreRow> rows);

struct MatchScoreRow {
    std::string model;
    std::string language;
    metrics::FreeFormMatchScore score;
};

/// %Match table: rows are models, columns are languages, higher is better.
EvalReport build_match_report(std::span<const MatchScoreRow> rows);

struct ExtractionScoreRow {
    std::string model;
    schemas::DocType doc_type;
    metrics::ExtractionScore score;
};

/// Document-wise EM table: rows are document types plus a Grand Total row
/// (macro average over the type rows), columns are models, higher is better.
EvalReport build_extraction_report(std::span<const ExtractionScoreRow> rows);

struct ExtractionSummaryRow {
    std::string model;
    metrics::ExtractionScore dataset;
};

/// Dataset-level EM / PM / Mean / spurious-field table, one row per model.
EvalReport build_extraction_summary(std::span<const ExtractionSummaryRow> rows);

/// Deterministic rendering: equal reports produce identical bytes. Markdown
/// bolds best and underlines second-best; CSV carries marks in companion
/// columns and provenance in leading '#' lines.
std::string render(const EvalReport& report, Format format);

/// Line-delimited key-value form for CI threshold checks.
std::string machine_summary(const EvalReport& report);

} // namespace ocrkit::reporting
