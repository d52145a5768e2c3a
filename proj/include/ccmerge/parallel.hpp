#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

#include "ccmerge/types.hpp"

namespace ccm {

// Runs fn(i) for i in [0, n) split across `threads` workers. Each index is
// processed exactly once; callers get determinism by writing only to slot i.
// The first exception thrown by any worker is rethrown after all join.
template <typename Fn>
void parallel_for(index_t n, unsigned threads, Fn&& fn) {
    if (n <= 0) return;
    if (threads <= 1 || n < 64) {
        for (index_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(n));
    std::atomic<index_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const index_t chunk = std::max<index_t>(1, n / static_cast<index_t>(workers * 8));
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                index_t begin = next.fetch_add(chunk);
                if (begin >= n || failed.load(std::memory_order_relaxed)) break;
                index_t end = std::min<index_t>(n, begin + chunk);
                try {
                    for (index_t i = begin; i < end; ++i) fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) first_error = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ccm
