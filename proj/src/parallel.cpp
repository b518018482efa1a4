#include "hcvr/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace hcvr::parallel {

namespace {

unsigned default_threads() noexcept {
    if (const char* env = std::getenv("HCVR_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<unsigned> g_threads{0};

}  // namespace

unsigned thread_count() noexcept {
    static const unsigned fallback = default_threads();
    const unsigned n = g_threads.load(std::memory_order_relaxed);
    return n != 0 ? n : fallback;
}

void set_thread_count(unsigned n) noexcept { g_threads.store(n, std::memory_order_relaxed); }

}  // namespace hcvr::parallel
