#pragma once

// Data-parallel word kernels shared by the distance-graph builder, the clique
// enumerator and the dense GF(2) eliminator.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2 variant.  The variant is chosen once at startup from CPUID and can
// be overridden with HCVR_ISA=scalar|avx2 or force_isa().  The variants are
// required to be bit-for-bit equivalent; tests/kernels_test.cpp checks that.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace hcvr::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Function table for one instruction-set variant.
struct KernelTable {
    Isa isa;

    /// out bit j is set iff popcount(query ^ points[j]) <= radius.
    /// out must hold ceil(points.size() / 64) words; trailing bits are cleared.
    void (*hamming_within)(std::uint64_t query, const std::uint64_t* points,
                           std::size_t count, unsigned radius, std::uint64_t* out);

    /// popcount(a & b) over `words` words.
    std::size_t (*and_count)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);

    /// dst = a & b.
    void (*and_into)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                     std::size_t words);

    /// dst = a & ~b.
    void (*andnot_into)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                        std::size_t words);

    /// dst ^= src.
    void (*xor_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);

    /// popcount over `words` words.
    std::size_t (*popcount)(const std::uint64_t* a, std::size_t words);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;

/// True when the running CPU can execute the AVX2 variant.
bool cpu_has_avx2() noexcept;

/// Table currently used by the library.
const KernelTable& active() noexcept;

/// Select a variant explicitly.  Returns false (and leaves the selection
/// unchanged) when the variant is unavailable on this build or CPU.
bool force_isa(Isa isa) noexcept;

// Convenience wrappers over active().

inline void hamming_within(std::uint64_t query, std::span<const std::uint64_t> points,
                           unsigned radius, std::span<std::uint64_t> out) {
    active().hamming_within(query, points.data(), points.size(), radius, out.data());
}

inline std::size_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    return active().and_count(a.data(), b.data(), a.size());
}

inline void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b) {
    active().and_into(dst.data(), a.data(), b.data(), dst.size());
}

inline void andnot_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                        std::span<const std::uint64_t> b) {
    active().andnot_into(dst.data(), a.data(), b.data(), dst.size());
}

inline void xor_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
    active().xor_into(dst.data(), src.data(), dst.size());
}

inline std::size_t popcount(std::span<const std::uint64_t> a) {
    return active().popcount(a.data(), a.size());
}

}  // namespace hcvr::kernels
