#pragma once

// Reduced simplicial homology.  GF(2) Betti numbers come from ranks of sparse
// boundary matrices; an integral path (Smith normal form) reports torsion on
// small instances.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "hcvr/complex.hpp"

namespace hcvr {

using BigInt = boost::multiprecision::cpp_int;

/// Mod-2 boundary operator from k-faces to (k-1)-faces.
///
/// Columns follow the canonical k-face order of the complex's FaceIndex; each
/// column lists its k+1 row indices in ascending order.  For k = 0 the single
/// row is the augmentation (empty face) when the matrix is reduced.
struct BoundaryMatrix {
    int dim = 0;
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
    std::vector<std::uint32_t> entries;  // cols * column_size()

    std::size_t column_size() const noexcept { return static_cast<std::size_t>(dim) + 1; }
    std::span<const std::uint32_t> column(std::uint64_t j) const noexcept {
        return {entries.data() + j * column_size(), column_size()};
    }
};

/// Reduced (augmented) unless `reduced` is false, in which case ∂_0 is empty.
BoundaryMatrix boundary(const Complex& k, int dim, bool reduced = true);

/// "col row" pairs, one per line.
void write_triplets(std::ostream& out, const BoundaryMatrix& m);

/// GF(2) rank by sparse column reduction (no clearing).
std::uint64_t gf2_rank_sparse(const BoundaryMatrix& m);

/// GF(2) rank by dense bit-packed elimination.  Independent of the sparse
/// path; practical up to a few thousand rows.
std::uint64_t gf2_rank_dense(const BoundaryMatrix& m);

/// Reduced Betti numbers over a window of dimensions.
class BettiVector {
public:
    BettiVector() = default;

    void set(int dim, std::uint64_t value) {
        values_[dim] = value;
        computed_.insert(dim);
    }
    /// Zero for dimensions that were not computed.
    std::uint64_t operator[](int dim) const noexcept {
        const auto it = values_.find(dim);
        return it == values_.end() ? 0 : it->second;
    }
    bool computed(int dim) const noexcept { return computed_.contains(dim); }
    const std::set<int>& computed_dims() const noexcept { return computed_; }
    const std::map<int, std::uint64_t>& values() const noexcept { return values_; }

    /// Σ (-1)^k β_k over computed dimensions.
    std::int64_t alternating_sum() const noexcept;

    friend bool operator==(const BettiVector&, const BettiVector&) = default;

private:
    std::map<int, std::uint64_t> values_;
    std::set<int> computed_;
};

/// Per-run statistics for reports.
struct HomologyStats {
    std::map<int, std::uint64_t> face_counts;    // f_k for every materialized dimension
    std::map<int, std::uint64_t> boundary_ranks; // rank ∂_k
    std::map<int, std::uint64_t> cleared_columns;
    double seconds = 0;
};

struct HomologyOptions {
    bool reduced = true;
    bool clearing = true;
};

/// β_k for k in [lo, hi].  Only faces of dimensions lo-1 .. hi+1 are
/// materialized, and each face table is released once it is no longer needed.
/// Throws std::invalid_argument unless 0 <= lo <= hi, and ResourceError when a
/// face table cannot be built.
BettiVector betti_window(const Complex& k, int lo, int hi, HomologyStats* stats = nullptr,
                         HomologyOptions options = {});

/// β_k for 0 <= k <= dim K.
BettiVector betti_all(const Complex& k, HomologyStats* stats = nullptr);

struct IntegerHomology {
    std::uint64_t rank = 0;
    std::vector<BigInt> torsion;  // elementary divisors > 1
};

inline constexpr std::uint64_t kDefaultIntegerFaceLimit = 400'000;

/// Integral reduced homology in dimension `dim` via Smith normal form of the
/// adjacent boundary maps.  Throws ResourceError when f_{dim-1} + f_dim +
/// f_{dim+1} exceeds `max_faces`.
IntegerHomology betti_integer(const Complex& k, int dim,
                              std::uint64_t max_faces = kDefaultIntegerFaceLimit);

/// Elementary divisors (all nonzero ones, ascending) of a sparse integer
/// matrix given as (row, col, value) triples.  Exposed for tests.
struct IntegerEntry {
    std::uint32_t row;
    std::uint32_t col;
    std::int64_t value;
};
std::vector<BigInt> elementary_divisors(std::uint32_t rows, std::uint32_t cols,
                                        std::span<const IntegerEntry> entries);

}  // namespace hcvr
