#pragma once

// Index-parallel loop sized by BHLAB_THREADS (default: hardware concurrency).

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bhlab {

inline std::size_t thread_count()
{
    if (const char *e = std::getenv("BHLAB_THREADS")) {
        long v = std::strtol(e, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs f(0..n-1); rethrows the exception of the lowest failing index.
template <typename F>
void parallel_for(std::size_t n, F &&f)
{
    const std::size_t t = std::min(thread_count(), n);
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t bad = n;
    std::exception_ptr err;
    auto work = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (i < bad) {
                    bad = i;
                    err = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < t; ++k) pool.emplace_back(work);
    for (auto &th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace bhlab
