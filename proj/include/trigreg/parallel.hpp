#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace trigreg {

// worker cap: TRIGREG_THREADS if set, otherwise available parallelism
inline int worker_count() {
    if (const char* env = std::getenv("TRIGREG_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, count). Output determinism is the caller's
// business: each index must write only its own slot.
inline void parallel_for(int count, const std::function<void(int)>& body) {
    const int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    body(i);
                } catch (const std::exception& ex) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true)) first_error = ex.what();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load()) throw std::runtime_error("parallel_for: worker failed: " + first_error);
}

}  // namespace trigreg
