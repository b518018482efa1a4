#pragma once

// Simplicial complexes on vertex sets, stored by their maximal facets.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hcvr/hypercube.hpp"

namespace hcvr {

class FaceIndex;

/// Duplicate-free vertex list kept in ascending (≺) order.
class Simplex {
public:
    Simplex() = default;
    /// Sorts and removes duplicates.
    explicit Simplex(std::vector<VertexSet> vertices);
    Simplex(std::initializer_list<VertexSet> vertices)
        : Simplex(std::vector<VertexSet>(vertices)) {}
    explicit Simplex(const Family& family)
        : Simplex(std::vector<VertexSet>(family.begin(), family.end())) {}

    std::span<const VertexSet> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    bool empty() const noexcept { return vertices_.empty(); }
    VertexSet operator[](std::size_t i) const noexcept { return vertices_[i]; }
    auto begin() const noexcept { return vertices_.begin(); }
    auto end() const noexcept { return vertices_.end(); }

    bool contains(VertexSet v) const noexcept;
    bool subset_of(const Simplex& other) const noexcept;

    /// Largest pairwise distance; 0 for fewer than two vertices.
    int diameter() const noexcept;

    Simplex without(const Simplex& removed) const;
    Simplex intersect(std::span<const VertexSet> sorted_vertices) const;

    /// Canonical order: by size, then lexicographically on the vertex lists.
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept;
    friend bool operator==(const Simplex&, const Simplex&) = default;

private:
    std::vector<VertexSet> vertices_;
};

/// f_k for k = 0, 1, ..., dim.
struct FVector {
    std::vector<std::uint64_t> counts;
};

struct EulerCharacteristic {
    std::int64_t chi = 0;
    FVector f;
};

/// A simplicial complex given by its maximal facets.
///
/// The facet list is an antichain in canonical order.  Faces of a given
/// dimension are materialized on first request and cached; the cache is
/// shared between copies and is safe to fill from several threads.
class Complex {
public:
    Complex();

    /// Drops empty and duplicate candidates and any candidate contained in
    /// another one.
    static Complex from_facets(std::vector<Simplex> candidates);

    std::span<const Simplex> facets() const noexcept { return facets_; }
    std::size_t facet_count() const noexcept { return facets_.size(); }
    bool empty() const noexcept { return facets_.empty(); }
    /// -1 for the empty complex.
    int dimension() const noexcept;

    /// Ascending list of vertices.
    std::span<const VertexSet> vertices() const;
    bool has_vertex(VertexSet v) const;

    /// True when s is a face (contained in some facet).  The empty simplex is
    /// a face of every complex.
    bool contains(const Simplex& s) const;

    /// All k-faces in canonical order.  Empty above the dimension.
    std::vector<Simplex> faces_of_dim(int k) const;
    std::uint64_t face_count(int k) const;

    /// Shared indexed view (vertex numbering + per-dimension face tables).
    const FaceIndex& index() const;

    friend bool operator==(const Complex& a, const Complex& b) { return a.facets_ == b.facets_; }

private:
    std::vector<Simplex> facets_;
    std::shared_ptr<FaceIndex> index_;
};

/// lk_K(s): facets {F \ s : s ⊆ F}, re-maximalized.  Throws
/// std::invalid_argument when s is not a face of K.
Complex link(const Complex& k, const Simplex& s);

/// st_K(s): the facets of K containing s.  Throws std::invalid_argument when
/// s is not a face of K.
Complex star(const Complex& k, const Simplex& s);

/// Union of st_K(v) over v ∈ vertices.  Every v must be a vertex of K.
Complex star_cluster(const Complex& k, std::span<const VertexSet> vertices);

/// Subcomplex on the given vertices: maximal sets F ∩ V.
Complex induced(const Complex& k, std::span<const VertexSet> vertices);

/// K * K2.  Vertex sets must be disjoint.  The join with the empty complex is
/// the other operand.
Complex join(const Complex& a, const Complex& b);

/// Some vertex lying in every facet (the ≺-least one), if any.
std::optional<VertexSet> cone_apex(const Complex& k);

EulerCharacteristic euler(const Complex& k);

/// Facet-list text format: one facet per line, vertices rendered with
/// to_string() and separated by ';'.  Lines starting with '#' are comments.
void write_facets(std::ostream& out, const Complex& k);
Complex read_facets(std::istream& in);

}  // namespace hcvr
