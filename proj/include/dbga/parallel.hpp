#pragma once

#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dbga {

inline void set_worker_threads(int n) {
#ifdef _OPENMP
    if (n >= 1) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

// Runs fn(i) for i in [0, n). Window cells are independent computations, so
// any schedule produces identical results; slot-indexed output keeps the
// aggregation deterministic.
inline void parallel_for(int n, const std::function<void(int)>& fn, bool parallel = true) {
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
#else
    (void)parallel;
#endif
    for (int i = 0; i < n; ++i) fn(i);
}

}  // namespace dbga
