#include "weightlab/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace weightlab {

namespace {
std::atomic<int> g_override{0};
}

int thread_cap() {
    int o = g_override.load(std::memory_order_relaxed);
    if (o > 0) return o;
    if (const char* env = std::getenv("WEIGHTLAB_THREADS")) {
        int k = std::atoi(env);
        if (k >= 1) return k;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void set_thread_override(int k) {
    g_override.store(k > 0 ? k : 0, std::memory_order_relaxed);
}

}  // namespace weightlab
