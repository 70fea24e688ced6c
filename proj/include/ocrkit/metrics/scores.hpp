// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocrkit/metrics/batch.hpp"
#include "ocrkit/schemas/schemas.hpp"
#include "ocrkit/text/normalize.hpp"
#include "ocrkit/text/segment.hpp"

namespace ocrkit::metrics {

/// Mean normalized Levenshtein distance over a corpus. `value` is in [0,1];
/// `scaled` is the reporting scale in [0,100], lower is better.
struct AnlsScore {
    double value = 0.0;
    double scaled = 0.0;
    text::SegmentUnit unit = text::SegmentUnit::codepoint;
    std::size_t n_pairs = 0;
};

struct TranscriptPair {
    text::Transcript prediction;
    text::Transcript reference;
};

/// Unweighted mean of per-pair normalized distances at `unit`.
/// Throws Error("no samples") on an empty corpus.
AnlsScore anls(std::span<const TranscriptPair> pairs, text::SegmentUnit unit,
               Execution exec = Execution::serial);

/// 1 iff the two strings normalize identically under `policy`.
int exact_match(std::string_view pred, std::string_view ref,
                const text::NormalizationPolicy& policy = {});

/// 1 - codepoint-level normalized Levenshtein between the normalized strings.
double percentage_match_field(std::string_view pred, std::string_view ref,
                              const text::NormalizationPolicy& policy = {});

struct FieldScore {
    std::string field;
    int em = 0;     // {0,1}
    double pm = 0.0; // [0,1]
};

/// Field-level scores for one document plus the document-level percentages.
struct ExtractionScore {
    std::vector<FieldScore> per_field;
    double doc_em = 0.0;  // percent
    double doc_pm = 0.0;  // percent
    double mean = 0.0;    // (doc_em + doc_pm) / 2
    std::size_t spurious_fields = 0;
    std::size_t n_documents = 1;
};

/// Scores every reference field (missing prediction -> em 0, pm 0); predicted
/// fields absent from the reference are counted as spurious, never scored.
/// Throws Error when the records carry different document types.
ExtractionScore score_extraction(const schemas::FieldRecord& pred,
                                 const schemas::FieldRecord& ref,
                                 const text::NormalizationPolicy& policy = {});

struct FreeFormMatchScore {
    std::size_t matched = 0;
    std::size_t total = 0;
    double percent = 0.0; // matched/total * 100, higher is better
};

/// Counts ground-truth values whose normalized form occurs verbatim as a
/// substring of the normalized OCR text. Throws Error on an empty field set.
FreeFormMatchScore free_form_match(const schemas::FieldRecord& gt_fields,
                                   const text::Transcript& ocr_text,
                                   const text::NormalizationPolicy& policy);

/// Unweighted mean over documents. Throws Error("no documents") when empty.
ExtractionScore aggregate_dataset(std::span<const ExtractionScore> doc_scores);

} // namespace ocrkit::metrics
