#include "hcvr/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <string>

namespace hcvr::kernels {

namespace {

void hamming_within_scalar(std::uint64_t query, const std::uint64_t* points, std::size_t count,
                           unsigned radius, std::uint64_t* out) {
    const std::size_t words = (count + 63) / 64;
    for (std::size_t w = 0; w < words; ++w) out[w] = 0;
    for (std::size_t j = 0; j < count; ++j) {
        if (static_cast<unsigned>(std::popcount(query ^ points[j])) <= radius)
            out[j / 64] |= std::uint64_t{1} << (j % 64);
    }
}

std::size_t and_count_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i] & b[i]);
    return total;
}

void and_into_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                     std::size_t words) {
    for (std::size_t i = 0; i < words; ++i) dst[i] = a[i] & b[i];
}

void andnot_into_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                        std::size_t words) {
    for (std::size_t i = 0; i < words; ++i) dst[i] = a[i] & ~b[i];
}

void xor_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
    for (std::size_t i = 0; i < words; ++i) dst[i] ^= src[i];
}

std::size_t popcount_scalar(const std::uint64_t* a, std::size_t words) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i]);
    return total;
}

constexpr KernelTable kScalar{
    Isa::scalar,       hamming_within_scalar, and_count_scalar, and_into_scalar,
    andnot_into_scalar, xor_into_scalar,      popcount_scalar,
};

const KernelTable* initial_table() noexcept {
    const KernelTable* best = &kScalar;
    if (cpu_has_avx2() && avx2_table() != nullptr) best = avx2_table();
    if (const char* env = std::getenv("HCVR_ISA")) {
        const std::string want(env);
        if (want == "scalar") best = &kScalar;
        // an unavailable request falls back to the detected variant
    }
    return best;
}

std::atomic<const KernelTable*>& selected() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

const KernelTable& scalar_table() noexcept { return kScalar; }

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
    return false;
#endif
}

const KernelTable& active() noexcept { return *selected().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) noexcept {
    if (isa == Isa::scalar) {
        selected().store(&kScalar);
        return true;
    }
    if (avx2_table() == nullptr || !cpu_has_avx2()) return false;
    selected().store(avx2_table());
    return true;
}

#if !defined(HCVR_HAVE_AVX2_KERNELS)
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif

}  // namespace hcvr::kernels
