#pragma once

// Brute-force reference implementations used as test oracles.  None of these
// share code with the library beyond VertexSet itself.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "hcvr/complex.hpp"
#include "hcvr/hypercube.hpp"

namespace testing {

using hcvr::VertexSet;

inline std::vector<int> elements_of(VertexSet a) {
    std::vector<int> out;
    for (int i = 1; i <= 63; ++i)
        if ((a.bits() >> (i - 1)) & 1u) out.push_back(i);
    return out;
}

// ≺ straight from its definition on ascending element lists.
inline bool naive_precedes(VertexSet a, VertexSet b) {
    const auto ea = elements_of(a), eb = elements_of(b);
    if (ea.size() != eb.size()) return ea.size() < eb.size();
    return ea < eb;
}

inline int naive_distance(VertexSet a, VertexSet b) {
    int d = 0;
    for (int i = 1; i <= 63; ++i) d += a.contains(i) != b.contains(i);
    return d;
}

using Face = std::vector<std::uint64_t>;  // sorted vertex bits

// All faces by dimension, by expanding every facet.  Small complexes only.
inline std::map<int, std::set<Face>> all_faces(const std::vector<std::vector<VertexSet>>& facets) {
    std::map<int, std::set<Face>> out;
    for (const auto& f : facets) {
        std::vector<std::uint64_t> vs;
        for (VertexSet v : f) vs.push_back(v.bits());
        std::sort(vs.begin(), vs.end());
        const std::size_t n = vs.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            Face face;
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1u) face.push_back(vs[i]);
            out[static_cast<int>(face.size()) - 1].insert(face);
        }
    }
    return out;
}

inline std::vector<std::vector<VertexSet>> facets_of(const hcvr::Complex& k) {
    std::vector<std::vector<VertexSet>> out;
    for (const auto& s : k.facets()) out.emplace_back(s.begin(), s.end());
    return out;
}

// Rank over GF(2) by plain Gaussian elimination on std::vector<bool> rows.
inline std::size_t naive_rank(std::vector<std::vector<bool>> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && !rows[p][c]) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r][c])
                for (std::size_t j = c; j < cols; ++j) rows[r][j] = rows[r][j] != rows[rank][j];
        ++rank;
    }
    return rank;
}

// Reduced Betti numbers over GF(2) from the face sets.
inline std::map<int, long long> naive_betti(const std::vector<std::vector<VertexSet>>& facets) {
    auto faces = all_faces(facets);
    std::map<int, long long> out;
    if (faces.empty()) return out;
    const int top = faces.rbegin()->first;
    std::map<int, std::size_t> rank;
    rank[0] = faces[0].empty() ? 0 : 1;  // augmentation
    for (int k = 1; k <= top; ++k) {
        std::vector<Face> lower(faces[k - 1].begin(), faces[k - 1].end());
        std::vector<std::vector<bool>> rows;  // one row per k-face (transpose has equal rank)
        for (const Face& f : faces[k]) {
            std::vector<bool> row(lower.size(), false);
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                Face g = f;
                g.erase(g.begin() + static_cast<std::ptrdiff_t>(drop));
                row[static_cast<std::size_t>(std::lower_bound(lower.begin(), lower.end(), g) - lower.begin())] = true;
            }
            rows.push_back(std::move(row));
        }
        rank[k] = naive_rank(std::move(rows));
    }
    for (int k = 0; k <= top; ++k)
        out[k] = static_cast<long long>(faces[k].size()) - static_cast<long long>(rank[k]) -
                 static_cast<long long>(rank.count(k + 1) ? rank[k + 1] : 0);
    return out;
}

// Maximal cliques by testing every vertex subset.  n <= 20.
inline std::set<std::vector<std::uint64_t>> naive_vr_facets(const std::vector<VertexSet>& vertices, int r) {
    const std::size_t n = vertices.size();
    std::vector<std::uint32_t> adj(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && naive_distance(vertices[i], vertices[j]) <= r) adj[i] |= 1u << j;
    std::vector<std::uint32_t> cliques;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool clique = true;
        for (std::size_t i = 0; i < n && clique; ++i)
            if ((mask >> i) & 1u) clique = (mask & ~(1u << i) & ~adj[i]) == 0;
        if (!clique) continue;
        bool maximal = true;
        for (std::size_t v = 0; v < n && maximal; ++v)
            if (!((mask >> v) & 1u) && (adj[v] & mask) == mask) maximal = false;
        if (maximal) cliques.push_back(mask);
    }
    std::set<std::vector<std::uint64_t>> out;
    for (std::uint32_t mask : cliques) {
        std::vector<std::uint64_t> f;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u) f.push_back(vertices[i].bits());
        std::sort(f.begin(), f.end());
        out.insert(f);
    }
    return out;
}

inline std::set<std::vector<std::uint64_t>> as_bit_sets(std::span<const hcvr::Simplex> facets) {
    std::set<std::vector<std::uint64_t>> out;
    for (const auto& s : facets) {
        std::vector<std::uint64_t> f;
        for (VertexSet v : s) f.push_back(v.bits());
        std::sort(f.begin(), f.end());
        out.insert(f);
    }
    return out;
}

inline unsigned long long naive_binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::vector<unsigned long long> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j) - 1];
    return row[static_cast<std::size_t>(k)];
}

inline VertexSet random_subset(std::mt19937_64& rng, int m) {
    return VertexSet{rng() & ((std::uint64_t{1} << m) - 1)};
}

}  // namespace testing
