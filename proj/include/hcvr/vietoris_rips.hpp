#pragma once

// Vietoris–Rips complexes over families of subsets of [m], and the
// closed-form facet generators at scale 3.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hcvr/complex.hpp"
#include "hcvr/hypercube.hpp"

namespace hcvr {

/// Threshold graph of a family: i ~ j iff 0 < d(F_i, F_j) <= radius.
class DistanceGraph {
public:
    DistanceGraph(Family vertices, int radius);

    const Family& vertices() const noexcept { return vertices_; }
    int radius() const noexcept { return radius_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    std::size_t words() const noexcept { return words_; }

    /// Adjacency bitset of vertex i (bit j set iff i ~ j).
    std::span<const std::uint64_t> row(std::size_t i) const noexcept {
        return {adjacency_.data() + i * words_, words_};
    }
    bool adjacent(std::size_t i, std::size_t j) const noexcept {
        return ((adjacency_[i * words_ + j / 64] >> (j % 64)) & 1u) != 0;
    }
    std::size_t degree(std::size_t i) const noexcept;

private:
    Family vertices_;
    int radius_;
    std::size_t words_;
    std::vector<std::uint64_t> adjacency_;
};

/// Maximal cliques as ascending vertex-index lists, sorted.  Degeneracy-ordered
/// Bron–Kerbosch with Tomita pivoting; the outer loop runs on the worker pool.
std::vector<std::vector<std::uint32_t>> maximal_cliques(const DistanceGraph& g);

/// VR(F; r) as the flag complex of the distance graph.  Throws
/// std::invalid_argument for r < 0.
Complex vr(const Family& f, int r);

/// Facets of VR(Q_m; 3) generated from the three closed-form families
/// (neighbourhood-plus-H sets, unions of adjacent neighbourhoods, and the
/// antipodal choices inside 4-dimensional subcubes), maximality-filtered.
/// Throws std::invalid_argument for m < 4.
std::vector<Simplex> q3_facets_closed_form(GroundSet g);

/// Raw closed-form candidates before filtering, by family, for inspection.
struct Q3Candidates {
    std::vector<Simplex> nbhd_plus_h;     // N[A] ∪ H_A^{i1,i2,i3}
    std::vector<Simplex> adjacent_pairs;  // N[A] ∪ N[B], |A Δ B| = 1
    std::vector<Simplex> subcube_choices; // one vertex from each antipodal pair of a 4-subcube
};
Q3Candidates q3_candidates(GroundSet g);

/// Facets of VR(F_1^n ∪ F_2^n; 3) from the closed form.  n >= 3.
std::vector<Simplex> f12_facets(int n);

/// Facets of VR(F_n^m ∪ F_{n+1}^m; 3) from the closed form.  1 <= n, n+1 <= m.
std::vector<Simplex> fn_fn1_facets(int n, GroundSet g);

struct FacetReport {
    std::size_t closed_form_count = 0;
    std::size_t clique_count = 0;
    std::vector<Simplex> only_closed_form;
    std::vector<Simplex> only_clique;

    bool ok() const noexcept { return only_closed_form.empty() && only_clique.empty(); }
    std::size_t mismatch_count() const noexcept {
        return only_closed_form.size() + only_clique.size();
    }
};

/// Compares a closed-form facet list against clique enumeration of VR(F; r).
FacetReport crosscheck(std::span<const Simplex> closed_form, const Family& f, int r);

/// Counts line, then one "closed-only" / "clique-only" line per mismatch.
void write_report(std::ostream& out, const FacetReport& report);

}  // namespace hcvr
