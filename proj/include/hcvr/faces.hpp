#pragma once

// Index-remapped view of a complex used by the face enumerator and the
// boundary-matrix assembler.
//
// Vertices are numbered 0..n-1 in ascending (≺) order.  A k-face with
// ascending local indices v_0 < ... < v_k is keyed by its combinatorial
// number  sum_j C(v_j, j+1),  which is a bijection onto [0, C(n, k+1)).
// Sorting by key gives the colexicographic order on index lists.

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "hcvr/hypercube.hpp"

namespace hcvr {

class Simplex;

/// Pascal table with saturation at UINT64_MAX.
class Binomials {
public:
    Binomials(std::uint32_t max_n, int max_k);

    std::uint64_t operator()(std::uint32_t n, int k) const noexcept {
        if (k < 0 || static_cast<std::uint32_t>(k) > n) return 0;
        return table_[static_cast<std::size_t>(n) * stride_ + static_cast<std::size_t>(k)];
    }
    bool saturated(std::uint32_t n, int k) const noexcept {
        return (*this)(n, k) == kSaturated;
    }
    std::uint32_t max_n() const noexcept { return max_n_; }
    int max_k() const noexcept { return static_cast<int>(stride_) - 1; }

    static constexpr std::uint64_t kSaturated = ~std::uint64_t{0};

private:
    std::uint32_t max_n_;
    std::size_t stride_;
    std::vector<std::uint64_t> table_;
};

class FaceIndex {
public:
    explicit FaceIndex(std::span<const Simplex> facets);

    std::span<const VertexSet> vertices() const noexcept { return vertices_; }
    std::uint32_t vertex_count() const noexcept {
        return static_cast<std::uint32_t>(vertices_.size());
    }
    /// Throws std::invalid_argument when v is not a vertex.
    std::uint32_t index_of(VertexSet v) const;

    /// Facets as ascending local index lists, in the complex's facet order.
    const std::vector<std::vector<std::uint32_t>>& facets() const noexcept { return facets_; }
    int dimension() const noexcept { return dimension_; }

    /// Sorted keys of all k-faces, cached after the first call.  Throws
    /// ResourceError when keys for this dimension do not fit in 64 bits.
    std::shared_ptr<const std::vector<std::uint64_t>> faces(int k) const;

    /// Face count without keeping the table cached if it was not already.
    std::uint64_t face_count(int k) const;

    /// Drops a cached face table.
    void release(int k) const;

    std::uint64_t key_of(std::span<const std::uint32_t> ascending) const noexcept;

    /// Writes the k+1 ascending local indices of the face with this key.
    void decode(std::uint64_t key, int k, std::uint32_t* out) const noexcept;

    const Binomials& binomials() const noexcept { return binomials_; }

private:
    std::vector<std::uint64_t> enumerate(int k) const;

    std::vector<VertexSet> vertices_;
    std::unordered_map<std::uint64_t, std::uint32_t> vertex_lookup_;
    std::vector<std::vector<std::uint32_t>> facets_;
    int dimension_ = -1;
    Binomials binomials_;

    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<int, std::shared_ptr<const std::vector<std::uint64_t>>> cache_;
};

}  // namespace hcvr
