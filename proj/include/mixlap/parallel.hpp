#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include <omp.h>

namespace mixlap::par {

/// Thread budget: min(OMP default, MIXLAP_THREADS if set).
inline int max_threads() {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("MIXLAP_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && cap < n) n = static_cast<int>(cap);
    }
    return n;
}

template <typename F>
void for_range(std::int64_t n, F&& body) {
    const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

/// Deterministic sum: fixed-size chunks reduced in parallel, partials
/// combined in index order. Result is independent of the thread count.
template <typename F>
double sum(std::int64_t n, F&& term) {
    constexpr std::int64_t chunk = 4096;
    const std::int64_t nc = (n + chunk - 1) / chunk;
    std::vector<double> partial(static_cast<std::size_t>(nc), 0.0);
    const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (std::int64_t c = 0; c < nc; ++c) {
        const std::int64_t lo = c * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        double acc = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace mixlap::par
