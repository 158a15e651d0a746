#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hopfx {

// Worker count: HOPFX_THREADS if set, else hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("HOPFX_THREADS")) {
        long n = std::atol(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(i) for i in [0, n).  Chunks are assigned statically so results
// written to preallocated per-index slots are deterministic regardless of
// scheduling.
inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace hopfx
