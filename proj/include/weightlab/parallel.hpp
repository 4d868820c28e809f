#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace weightlab {

// Thread cap: WEIGHTLAB_THREADS if set, else hardware concurrency.
// set_thread_override(k) pins the cap programmatically (0 restores the
// environment-driven value); used by the determinism checks.
int thread_cap();
void set_thread_override(int k);

// Runs fn(i) for i in [0, n). fn must only write to state indexed by i so
// the result is identical for every thread count.
template <class F>
void parallel_for(int64_t n, F&& fn) {
    int threads = thread_cap();
    if (threads <= 1 || n < 2 * threads) {
        for (int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    int64_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int64_t lo = t * chunk, hi = lo + chunk < n ? lo + chunk : n;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace weightlab
