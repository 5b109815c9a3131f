#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "chilab/field.hpp"

namespace chilab {

// Runs fn(chunk) for chunk in [0, chunks). workers <= 1 means sequential.
// Callers keep per-chunk state and merge it in chunk order afterwards, so the
// combined result is independent of the partitioning.
inline void parallel_for_chunks(u64 chunks, u32 workers, const std::function<void(u64)>& fn) {
    if (workers <= 1 || chunks <= 1) {
        for (u64 i = 0; i < chunks; ++i) fn(i);
        return;
    }
    std::atomic<u64> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    u32 count = u32(std::min<u64>(workers, chunks));
    std::vector<std::thread> threads;
    threads.reserve(count);
    for (u32 w = 0; w < count; ++w) {
        threads.emplace_back([&] {
            u64 i;
            while (!failed.load(std::memory_order_relaxed) && (i = next.fetch_add(1)) < chunks) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline u32 effective_workers(u32 requested) {
    if (requested != 0) return requested;
    return 1;
}

}  // namespace chilab
