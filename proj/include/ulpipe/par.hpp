#pragma once
// Order-preserving data-parallel map used by the per-document kernels.
// Every parallel entry point has a serial reference twin; tests assert the
// two agree and the benchmark tool compares their throughput. Results never
// depend on the worker count: work is written by index, reductions happen
// after the parallel region in deterministic order.

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ulpipe {

inline int effective_workers(int requested) {
    if (requested <= 1) return 1;
#ifdef _OPENMP
    return requested;
#else
    return 1;
#endif
}

// serial reference implementation
template <class In, class Fn>
auto serial_transform(const std::vector<In>& in, Fn fn)
    -> std::vector<decltype(fn(in[0]))> {
    std::vector<decltype(fn(in[0]))> out;
    out.reserve(in.size());
    for (const In& x : in) out.push_back(fn(x));
    return out;
}

// OpenMP twin; identical output for any worker count
template <class In, class Fn>
auto parallel_transform(const std::vector<In>& in, Fn fn, int workers)
    -> std::vector<decltype(fn(in[0]))> {
    workers = effective_workers(workers);
    if (workers == 1 || in.size() < 2) return serial_transform(in, fn);
    std::vector<decltype(fn(in[0]))> out(in.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers)
#endif
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(in.size()); i++) {
        out[size_t(i)] = fn(in[size_t(i)]);
    }
    return out;
}

}  // namespace ulpipe
