#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace rarburn {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Evaluates fn(0) .. fn(count - 1) on up to `threads` workers and returns the
// results in index order. Each index must own all of its randomness, so the
// output does not depend on the thread count or on scheduling.
template <class Fn>
auto parallel_replications(int count, int threads, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, int>> {
    using Result = std::invoke_result_t<Fn&, int>;
    std::vector<Result> results(static_cast<std::size_t>(std::max(count, 0)));
    const int workers = std::clamp(resolve_threads(threads), 1, std::max(count, 1));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }

    constexpr int kChunk = 16;
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const int start = next.fetch_add(kChunk);
            if (start >= count) return;
            const int stop = std::min(count, start + kChunk);
            try {
                for (int i = start; i < stop; ++i) results[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace rarburn
