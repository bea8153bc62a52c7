#pragma once

#include <cstddef>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mackey {

// Execution mode for the verification kernels. The serial path is the
// reference; the parallel path must produce identical results (tested, and
// compared by the bench tool).
struct exec {
    bool parallel = true;
    static exec serial() { return exec{false}; }
};

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <typename Fn>
void parallel_for(std::size_t n, const exec& ex, Fn&& fn) {
#ifdef _OPENMP
    if (ex.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < (long long)n; ++i) fn((std::size_t)i);
        return;
    }
#endif
    (void)ex;
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

} // namespace mackey
