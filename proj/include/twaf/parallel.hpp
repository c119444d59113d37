#pragma once

#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace twaf {

// Execution policy for the audit kernels.  Serial is the reference
// implementation; Parallel uses OpenMP when compiled in and must produce
// identical results (cross-checked in the tests and the benchmark).
enum class Exec { Serial, Parallel };

template <class F>
void parallel_for(Exec exec, int64_t n, F&& fn) {
#if defined(_OPENMP)
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
#endif
    (void)exec;
    for (int64_t i = 0; i < n; ++i) fn(i);
}

inline int worker_count(Exec exec) {
#if defined(_OPENMP)
    if (exec == Exec::Parallel) return omp_get_max_threads();
#endif
    (void)exec;
    return 1;
}

}  // namespace twaf
