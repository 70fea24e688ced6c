// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/metrics/scores.hpp"

#include <numeric>

#include "ocrkit/error.hpp"
#include "ocrkit/metrics/distance.hpp"

namespace ocrkit::metrics {

AnlsScore anls(std::span<const TranscriptPair> pairs, text::SegmentUnit unit, Execution exec) {
    if (pairs.empty()) {
        throw Error("no samples");
    }
    const std::vector<double> distances = pair_distances(pairs, unit, exec);
    // Summed in input order regardless of execution mode.
    const double sum = std::accumulate(distances.begin(), distances.end(), 0.0);
    AnlsScore score;
    score.value = sum / static_cast<double>(distances.size());
    score.scaled = 100.0 * score.value;
    score.unit = unit;
    score.n_pairs = pairs.size();
    return score;
}

int exact_match(std::string_view pred, std::string_view ref,
                const text::NormalizationPolicy& policy) {
    return text::normalize_text(pred, policy) == text::normalize_text(ref, policy) ? 1 : 0;
}

double percentage_match_field(std::string_view pred, std::string_view ref,
                              const text::NormalizationPolicy& policy) {
    const std::string np = text::normalize_text(pred, policy);
    const std::string nr = text::normalize_text(ref, policy);
    return 1.0 - normalized_distance(np, nr, text::SegmentUnit::codepoint);
}

ExtractionScore score_extraction(const schemas::FieldRecord& pred,
                                 const schemas::FieldRecord& ref,
                                 const text::NormalizationPolicy& policy) {
    if (pred.doc_type != ref.doc_type) {
        throw Error("document type mismatch between prediction and reference");
    }
    ExtractionScore score;
    double em_sum = 0.0;
    double pm_sum = 0.0;
    for (const auto& [field, truth] : ref.values) {
        FieldScore fs;
        fs.field = field;
        if (const std::string* guess = pred.find(field)) {
            fs.em = exact_match(*guess, truth, policy);
            fs.pm = fs.em == 1 ? 1.0 : percentage_match_field(*guess, truth, policy);
        }
        em_sum += fs.em;
        pm_sum += fs.pm;
        score.per_field.push_back(std::move(fs));
    }
    for (const auto& [field, value] : pred.values) {
        if (!ref.has(field)) {
            ++score.spurious_fields;
        }
    }
    const auto n = static_cast<double>(score.per_field.size());
    if (n > 0) {
        score.doc_em = 100.0 * em_sum / n;
        score.doc_pm = 100.0 * pm_sum / n;
    }
    score.mean = (score.doc_em + score.doc_pm) / 2.0;
    return score;
}

FreeFormMatchScore free_form_match(const schemas::FieldRecord& gt_fields,
                                   const text::Transcript& ocr_text,
                                   const text::NormalizationPolicy& policy) {
    if (gt_fields.values.empty()) {
        throw Error("free-form match requires at least one ground-truth field");
    }
    const std::string haystack = text::normalize_text(ocr_text.raw, policy);
    FreeFormMatchScore score;
    score.total = gt_fields.values.size();
    for (const auto& [field, value] : gt_fields.values) {
        const std::string needle = text::normalize_text(value, policy);
        if (haystack.find(needle) != std::string::npos) {
            ++score.matched;
        }
    }
    score.percent = 100.0 * static_cast<double>(score.matched) / static_cast<double>(score.total);
    return score;
}

ExtractionScore aggregate_dataset(std::span<const ExtractionScore> doc_scores) {
    if (doc_scores.empty()) {
        throw Error("no documents");
    }
    ExtractionScore agg;
    double em = 0.0, pm = 0.0, mean = 0.0;
    for (const ExtractionScore& s : doc_scores) {
        em += s.doc_em;
        pm += s.doc_pm;
        mean += s.mean;
        agg.spurious_fields += s.spurious_fields;
    }
    const auto n = static_cast<double>(doc_scores.size());
    agg.doc_em = em / n;
    agg.doc_pm = pm / n;
    agg.mean = mean / n;
    agg.n_documents = doc_scores.size();
    return agg;
}

} // namespace ocrkit::metrics
