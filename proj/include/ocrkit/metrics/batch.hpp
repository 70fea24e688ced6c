// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ocrkit/text/segment.hpp"

namespace ocrkit::metrics {

struct TranscriptPair;

/// Corpus scoring runs either on a single thread (the reference path) or as an
/// OpenMP-parallel loop over documents. Both paths produce identical results;
/// outputs are always stored by input index, so merges are deterministic.
enum class Execution { serial, parallel };

/// Per-pair normalized distances at `unit`, in input order.
std::vector<double> pair_distances(std::span<const TranscriptPair> pairs,
                                   text::SegmentUnit unit, Execution exec);

/// Runs fn(i) for i in [0, n), optionally OpenMP-parallel. fn must be safe to
/// call concurrently for distinct i.
void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& fn);

/// Number of worker threads the parallel path would use.
int worker_threads();
void set_worker_threads(int n);

} // namespace ocrkit::metrics
