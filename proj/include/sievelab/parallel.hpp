#pragma once
// Minimal static-partition parallel loop. Worker count is capped by the
// SIEVELAB_THREADS environment variable (positive integer). Each index owns
// its output slot, so results are independent of scheduling.

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sievelab {

inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("SIEVELAB_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0 && static_cast<unsigned>(cap) < n)
            n = static_cast<unsigned>(cap);
    }
    return n;
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& body) {
    const unsigned workers = worker_count();
    if (count == 0) return;
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    const unsigned used = static_cast<unsigned>(
        std::min<std::size_t>(workers, count));
    std::vector<std::thread> pool;
    pool.reserve(used);
    for (unsigned w = 0; w < used; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += used) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace sievelab
