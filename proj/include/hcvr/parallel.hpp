#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hcvr::parallel {

/// Worker count used by every parallel loop in the library.  Defaults to
/// HCVR_THREADS when set, otherwise std::thread::hardware_concurrency().
unsigned thread_count() noexcept;

/// 0 restores the default.
void set_thread_count(unsigned n) noexcept;

/// Splits [0, n) into at most thread_count() contiguous chunks and calls
/// body(begin, end, worker) for each, one chunk per thread.  Exceptions from
/// workers are rethrown on the calling thread (the first one wins).
template <typename Body>
void for_chunks(std::size_t n, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        body(std::size_t{0}, n, 0u);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, begin, end, w] {
            try {
                body(begin, end, static_cast<unsigned>(w));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace hcvr::parallel
