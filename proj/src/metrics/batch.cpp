// SPDX-License-Identifier: Apache-2.0
#include "ocrkit/metrics/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ocrkit/metrics/distance.hpp"
#include "ocrkit/metrics/scores.hpp"

namespace ocrkit::metrics {

void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
    if (exec == Execution::parallel) {
        const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < count; ++i) {
            fn(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) {
        fn(i);
    }
}

int worker_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_worker_threads(int n) {
#ifdef _OPENMP
    if (n > 0) {
        omp_set_num_threads(n);
    }
#else
    (void)n;
#endif
}

std::vector<double> pair_distances(std::span<const TranscriptPair> pairs,
                                   text::SegmentUnit unit, Execution exec) {
    std::vector<double> out(pairs.size());
    for_each_index(pairs.size(), exec, [&](std::size_t i) {
        out[i] = normalized_distance(pairs[i].prediction.normalized,
                                     pairs[i].reference.normalized, unit);
    });
    return out;
}

} // namespace ocrkit::metrics
