#pragma once

/// Deterministic task-parallel map: results are collected by task index, so
/// the reduction order (and hence every exact result) is independent of the
/// thread count.

#include <atomic>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lzeta {

template <class R>
std::vector<R> parallel_map(size_t count, int threads, const std::function<R(size_t)>& fn) {
    if (threads <= 0) threads = int(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    std::vector<R> out(count);
    if (count == 0) return out;
    if (threads == 1 || count == 1) {
        for (size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace lzeta
