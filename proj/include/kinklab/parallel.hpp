#ifndef KINKLAB_PARALLEL_HPP
#define KINKLAB_PARALLEL_HPP

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kinklab {

// Worker cap: KINKLAB_THREADS if set, otherwise the OpenMP default.
inline int worker_count() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("KINKLAB_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return n;
#else
    return 1;
#endif
}

// Data-parallel map over [0, count). Every iteration must be independent;
// results are bitwise identical to the serial loop because no reductions
// cross iterations. Serial builds compile to the plain loop.
template <class F>
void parallel_for(int count, F&& body) {
#ifdef _OPENMP
    const int workers = worker_count();
#pragma omp parallel for schedule(static) num_threads(workers)
    for (int i = 0; i < count; ++i) body(i);
#else
    for (int i = 0; i < count; ++i) body(i);
#endif
}

template <class F>
void serial_for(int count, F&& body) {
    for (int i = 0; i < count; ++i) body(i);
}

} // namespace kinklab

#endif
