#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace hinv::detail {

/// Runs fn(0..count-1) on up to `jobs` worker threads. Indices are handed
/// out dynamically, so callers must write results into per-index slots to
/// stay schedule-independent. The first exception (by index order) is
/// rethrown on the calling thread after all workers join.
template <typename Fn>
void parallel_for_index(int count, int jobs, Fn&& fn) {
    if (count <= 0) return;
    if (jobs < 1) jobs = 1;
    if (jobs == 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }

    const int workers = jobs < count ? jobs : count;
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& worker : pool) worker.join();
    for (const std::exception_ptr& error : errors)
        if (error) std::rethrow_exception(error);
}

}  // namespace hinv::detail
