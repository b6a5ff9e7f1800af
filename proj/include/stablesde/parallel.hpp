#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace stablesde {

/// Run fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// count). Tasks must write only to their own output slots; callers do
/// any cross-task reduction afterwards in fixed index order, so results
/// never depend on the worker count.
inline void parallel_for_index(std::int64_t n, int threads,
                               const std::function<void(std::int64_t)>& fn) {
    if (n <= 0) return;
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers > n) workers = static_cast<int>(n);
    if (workers == 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::int64_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace stablesde
