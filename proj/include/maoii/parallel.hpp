#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace maoii {

/// Runs fn(0..n_tasks-1) across up to n_threads workers. Each task writes
/// only its own output slot, so results are independent of scheduling.
inline void run_parallel(std::size_t n_tasks, unsigned n_threads,
                         const std::function<void(std::size_t)>& fn) {
    if (n_threads <= 1 || n_tasks <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1))
            fn(i);
    };
    std::vector<std::thread> pool;
    const unsigned count = std::min<std::size_t>(n_threads, n_tasks);
    pool.reserve(count);
    for (unsigned k = 0; k < count; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace maoii
