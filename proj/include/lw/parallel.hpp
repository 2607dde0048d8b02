#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lw {

/// Worker count: LW_THREADS if set (clamped to >= 1), otherwise the
/// hardware concurrency.
inline int thread_budget() {
    if (const char* env = std::getenv("LW_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs f(i) for i in [0, count). Iterations must write to disjoint state;
/// the block partition is fixed by (count, workers) so outputs do not
/// depend on scheduling.
template <typename F>
void parallel_for(int count, F&& f) {
    const int workers = std::min(thread_budget(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const int lo = static_cast<int>(static_cast<long long>(count) * w / workers);
        const int hi = static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
        pool.emplace_back([lo, hi, &f] {
            for (int i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace lw
