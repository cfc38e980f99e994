#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace grasscy {

// Worker cap: an explicit request wins, then GRASSCY_WORKERS, then the
// hardware concurrency.
inline unsigned worker_count(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("GRASSCY_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Calls f(i) for i in [0, count) on up to `workers` threads. The first
// exception thrown by any task is rethrown after all threads join.
template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& f) {
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace grasscy
