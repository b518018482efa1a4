#pragma once

// Ground-set combinatorics for the hypercube Q_m viewed as the power set of
// [m] = {1..m} under the symmetric-difference metric.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcvr {

/// Largest supported ground set; one VertexSet is one 64-bit word.
inline constexpr int kMaxGround = 63;

/// A subset of [m].  Element i is stored in bit i-1.
///
/// The natural ordering of VertexSet is the cardinality-then-lexicographic
/// total order used throughout the library: sets compare first by size, and
/// equal-size sets compare by their ascending element lists.
class VertexSet {
public:
    constexpr VertexSet() noexcept = default;
    constexpr explicit VertexSet(std::uint64_t bits) noexcept : bits_(bits) {}

    /// Builds a set from 1-based elements.  Throws std::invalid_argument for
    /// elements outside 1..kMaxGround.
    static VertexSet of(std::initializer_list<int> elements);
    static VertexSet of(std::span<const int> elements);

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr bool empty() const noexcept { return bits_ == 0; }

    constexpr bool contains(int element) const noexcept {
        return element >= 1 && element <= kMaxGround &&
               ((bits_ >> (element - 1)) & 1u) != 0;
    }
    constexpr bool subset_of(VertexSet other) const noexcept {
        return (bits_ & ~other.bits_) == 0;
    }

    /// Smallest element, or 0 for the empty set.
    constexpr int min_element() const noexcept {
        return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1;
    }
    /// Largest element, or 0 for the empty set.
    constexpr int max_element() const noexcept {
        return bits_ == 0 ? 0 : 64 - std::countl_zero(bits_);
    }

    /// Ascending element list.
    std::vector<int> elements() const;

    constexpr VertexSet operator^(VertexSet other) const noexcept {
        return VertexSet{bits_ ^ other.bits_};
    }
    constexpr VertexSet operator&(VertexSet other) const noexcept {
        return VertexSet{bits_ & other.bits_};
    }
    constexpr VertexSet operator|(VertexSet other) const noexcept {
        return VertexSet{bits_ | other.bits_};
    }

    friend constexpr bool operator==(VertexSet, VertexSet) noexcept = default;

    /// Cardinality first; ties go to the set owning the smallest element of
    /// the symmetric difference (the first differing position of the
    /// ascending element lists).
    friend constexpr std::strong_ordering operator<=>(VertexSet a, VertexSet b) noexcept {
        if (a.bits_ == b.bits_) return std::strong_ordering::equal;
        const int ca = a.size();
        const int cb = b.size();
        if (ca != cb) return ca <=> cb;
        const std::uint64_t first_diff = (a.bits_ ^ b.bits_) & (~(a.bits_ ^ b.bits_) + 1);
        return (a.bits_ & first_diff) != 0 ? std::strong_ordering::less
                                            : std::strong_ordering::greater;
    }

private:
    std::uint64_t bits_ = 0;
};

/// The ambient [m].
class GroundSet {
public:
    /// Throws std::invalid_argument unless 1 <= m <= kMaxGround.
    explicit GroundSet(int m);

    int m() const noexcept { return m_; }
    VertexSet full() const noexcept {
        return VertexSet{m_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m_) - 1};
    }
    bool contains(VertexSet a) const noexcept { return a.subset_of(full()); }

    friend bool operator==(GroundSet, GroundSet) noexcept = default;

private:
    int m_;
};

/// Duplicate-free collection of vertex sets, kept in ascending order.
class Family {
public:
    explicit Family(GroundSet ground) : ground_(ground) {}

    /// Sorts and deduplicates.  Throws std::invalid_argument if a member is
    /// not a subset of the ground set.
    Family(GroundSet ground, std::vector<VertexSet> members);

    GroundSet ground() const noexcept { return ground_; }
    std::span<const VertexSet> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(VertexSet a) const noexcept;

    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }
    VertexSet operator[](std::size_t i) const noexcept { return members_[i]; }

    /// Members satisfying the predicate, same ground set.
    Family filter(const std::function<bool(VertexSet)>& keep) const;

    friend Family operator|(const Family& a, const Family& b);
    friend bool operator==(const Family&, const Family&) = default;

private:
    GroundSet ground_;
    std::vector<VertexSet> members_;
};

/// |A Δ B|.
constexpr int distance(VertexSet a, VertexSet b) noexcept { return (a ^ b).size(); }

/// Strict total order: |A| < |B|, or equal size and A lexicographically first.
constexpr bool precedes(VertexSet a, VertexSet b) noexcept { return a < b; }

constexpr VertexSet symdiff(VertexSet a, VertexSet s) noexcept { return a ^ s; }

/// Complement within [m].
inline VertexSet complement(GroundSet g, VertexSet a) noexcept { return g.full() ^ a; }

/// All n-subsets of [m].  Throws std::invalid_argument unless 0 <= n <= m.
Family level_family(GroundSet g, int n);

/// Union of level_family(g, n) over the given levels.
Family levels_family(GroundSet g, std::span<const int> levels);

/// The whole power set of [m].
Family power_set(GroundSet g);

/// Every B ⊆ [m] with B ≺ A, plus A itself when inclusive.
Family prefix_family(GroundSet g, VertexSet a, bool inclusive);

/// Members of F at distance exactly 1 from A (the open neighbourhood), plus A
/// itself when `closed` and A ∈ F.
Family neighborhood(const Family& f, VertexSet a, bool closed = true);
inline Family closed_neighborhood(const Family& f, VertexSet a) { return neighborhood(f, a, true); }

/// {A, A^{i1,i2}, A^{i1,i3}, A^{i2,i3}}.  Indices are 1-based and must be
/// pairwise distinct elements of [m]; otherwise std::invalid_argument.
Family h_set(GroundSet g, VertexSet a, int i1, int i2, int i3);

/// { [m] \ B : B ∈ F }.
Family complement_family(const Family& f);

/// "i1i2...in" when every element is <= 9, "{a,b,...}" otherwise, "{}" for ∅.
std::string to_string(VertexSet a);

/// Accepts the to_string forms plus bare comma lists ("1,2,3").  Throws
/// std::invalid_argument on malformed input.
VertexSet parse_vertex_set(std::string_view text);

}  // namespace hcvr

template <>
struct std::hash<hcvr::VertexSet> {
    std::size_t operator()(hcvr::VertexSet a) const noexcept {
        return std::hash<std::uint64_t>{}(a.bits());
    }
};
