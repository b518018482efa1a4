// Compiled with -mavx2 -mpopcnt; only reached through the dispatch table after
// a CPUID check.
#include "hcvr/kernels.hpp"

#include <immintrin.h>

#include <bit>

namespace hcvr::kernels {

namespace {

// Per-64-bit-lane popcount via the nibble lookup + SAD reduction.
inline __m256i popcount_epi64(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i v) {
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
    return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

void hamming_within_avx2(std::uint64_t query, const std::uint64_t* points, std::size_t count,
                         unsigned radius, std::uint64_t* out) {
    const std::size_t words = (count + 63) / 64;
    for (std::size_t w = 0; w < words; ++w) out[w] = 0;

    const __m256i q = _mm256_set1_epi64x(static_cast<long long>(query));
    const __m256i limit = _mm256_set1_epi64x(static_cast<long long>(radius));
    std::size_t j = 0;
    for (; j + 4 <= count; j += 4) {
        const __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(points + j));
        const __m256i dist = popcount_epi64(_mm256_xor_si256(p, q));
        const __m256i too_far = _mm256_cmpgt_epi64(dist, limit);
        const unsigned far_bits =
            static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(too_far)));
        const std::uint64_t near_bits = (~far_bits) & 0xfu;
        out[j / 64] |= near_bits << (j % 64);
    }
    for (; j < count; ++j) {
        if (static_cast<unsigned>(std::popcount(query ^ points[j])) <= radius)
            out[j / 64] |= std::uint64_t{1} << (j % 64);
    }
}

std::size_t and_count_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(va, vb)));
    }
    std::size_t total = horizontal_sum(acc);
    for (; i < words; ++i) total += static_cast<std::size_t>(_mm_popcnt_u64(a[i] & b[i]));
    return total;
}

void and_into_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                   std::size_t words) {
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(va, vb));
    }
    for (; i < words; ++i) dst[i] = a[i] & b[i];
}

void andnot_into_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                      std::size_t words) {
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        // _mm256_andnot_si256 computes ~first & second
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_andnot_si256(vb, va));
    }
    for (; i < words; ++i) dst[i] = a[i] & ~b[i];
}

void xor_into_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        const __m256i vd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        const __m256i vs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(vd, vs));
    }
    for (; i < words; ++i) dst[i] ^= src[i];
}

std::size_t popcount_avx2(const std::uint64_t* a, std::size_t words) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        acc = _mm256_add_epi64(acc, popcount_epi64(va));
    }
    std::size_t total = horizontal_sum(acc);
    for (; i < words; ++i) total += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
    return total;
}

constexpr KernelTable kAvx2{
    Isa::avx2,        hamming_within_avx2, and_count_avx2, and_into_avx2,
    andnot_into_avx2, xor_into_avx2,       popcount_avx2,
};

}  // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

}  // namespace hcvr::kernels
