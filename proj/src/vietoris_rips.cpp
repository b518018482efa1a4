#include "hcvr/vietoris_rips.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hcvr/kernels.hpp"
#include "hcvr/parallel.hpp"

namespace hcvr {

DistanceGraph::DistanceGraph(Family vertices, int radius)
    : vertices_(std::move(vertices)), radius_(radius), words_((vertices_.size() + 63) / 64) {
    if (radius < 0) throw std::invalid_argument("VR scale must be nonnegative");
    const std::size_t n = vertices_.size();
    adjacency_.assign(n * words_, 0);
    std::vector<std::uint64_t> points(n);
    for (std::size_t i = 0; i < n; ++i) points[i] = vertices_[i].bits();
    parallel::for_chunks(n, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t i = begin; i < end; ++i) {
            std::span<std::uint64_t> out(adjacency_.data() + i * words_, words_);
            kernels::hamming_within(points[i], points, static_cast<unsigned>(radius), out);
            out[i / 64] &= ~(std::uint64_t{1} << (i % 64));
        }
    });
}

std::size_t DistanceGraph::degree(std::size_t i) const noexcept {
    return kernels::popcount(row(i));
}

namespace {

// Smallest-last ordering: repeatedly remove a vertex of minimum remaining degree.
std::vector<std::uint32_t> degeneracy_order(const DistanceGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> degree(n);
    std::size_t max_degree = 0;
    for (std::size_t i = 0; i < n; ++i) {
        degree[i] = g.degree(i);
        max_degree = std::max(max_degree, degree[i]);
    }
    std::vector<std::vector<std::uint32_t>> buckets(max_degree + 1);
    for (std::size_t i = 0; i < n; ++i) buckets[degree[i]].push_back(static_cast<std::uint32_t>(i));
    std::vector<char> removed(n, 0);
    std::vector<std::uint32_t> order;
    order.reserve(n);
    std::size_t low = 0;
    while (order.size() < n) {
        low = std::min(low, max_degree);
        while (buckets[low].empty()) ++low;
        const std::uint32_t v = buckets[low].back();
        buckets[low].pop_back();
        if (removed[v] || degree[v] != low) continue;  // stale entry
        removed[v] = 1;
        order.push_back(v);
        const auto row = g.row(v);
        for (std::size_t w = 0; w < row.size(); ++w)
            for (std::uint64_t bits = row[w]; bits != 0; bits &= bits - 1) {
                const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                if (removed[u]) continue;
                --degree[u];
                buckets[degree[u]].push_back(static_cast<std::uint32_t>(u));
                if (degree[u] < low) low = degree[u];
            }
    }
    return order;
}

class CliqueSearch {
public:
    CliqueSearch(const DistanceGraph& g, std::vector<std::vector<std::uint32_t>>& out)
        : g_(g), words_(g.words()), out_(out) {}

    void run_from(std::uint32_t v, std::span<const std::uint64_t> p, std::span<const std::uint64_t> x) {
        auto& frame = frame_at(0);
        std::copy(p.begin(), p.end(), frame.begin());
        std::copy(x.begin(), x.end(), frame.begin() + static_cast<std::ptrdiff_t>(words_));
        clique_.assign(1, v);
        expand(0);
    }

private:
    // frame layout: P | X | candidates
    std::vector<std::uint64_t>& frame_at(std::size_t depth) {
        while (frames_.size() <= depth) frames_.emplace_back(3 * words_, 0);
        return frames_[depth];
    }

    void expand(std::size_t depth) {
        std::uint64_t* p = frame_at(depth).data();
        std::uint64_t* x = p + words_;
        std::uint64_t* cand = x + words_;
        const kernels::KernelTable& k = kernels::active();

        if (k.popcount(p, words_) == 0) {
            if (k.popcount(x, words_) == 0) {
                auto c = clique_;
                std::sort(c.begin(), c.end());
                out_.push_back(std::move(c));
            }
            return;
        }

        // Tomita pivot: the vertex of P ∪ X with the most neighbours in P.
        std::size_t best = 0;
        std::size_t pivot = 0;
        bool have_pivot = false;
        for (std::size_t w = 0; w < words_; ++w)
            for (std::uint64_t bits = p[w] | x[w]; bits != 0; bits &= bits - 1) {
                const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                const std::size_t c = k.and_count(p, g_.row(u).data(), words_);
                if (!have_pivot || c > best) {
                    best = c;
                    pivot = u;
                    have_pivot = true;
                }
            }
        k.andnot_into(cand, p, g_.row(pivot).data(), words_);

        for (std::size_t w = 0; w < words_; ++w)
            for (std::uint64_t bits = cand[w]; bits != 0; bits &= bits - 1) {
                const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                const std::uint64_t* nv = g_.row(v).data();
                // growing frames_ moves the inner vectors but not their buffers
                std::uint64_t* next = frame_at(depth + 1).data();
                k.and_into(next, p, nv, words_);
                k.and_into(next + words_, x, nv, words_);
                clique_.push_back(static_cast<std::uint32_t>(v));
                expand(depth + 1);
                clique_.pop_back();
                p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
                x[v / 64] |= std::uint64_t{1} << (v % 64);
            }
    }

    const DistanceGraph& g_;
    std::size_t words_;
    std::vector<std::vector<std::uint32_t>>& out_;
    std::vector<std::vector<std::uint64_t>> frames_;
    std::vector<std::uint32_t> clique_;
};

std::vector<Simplex> to_simplices(const Family& f,
                                  const std::vector<std::vector<std::uint32_t>>& cliques) {
    std::vector<Simplex> out;
    out.reserve(cliques.size());
    for (const auto& c : cliques) {
        std::vector<VertexSet> vs;
        vs.reserve(c.size());
        for (std::uint32_t i : c) vs.push_back(f[i]);
        out.emplace_back(std::move(vs));
    }
    return out;
}

void check_diameter(const Simplex& s, int r, const char* where) {
    if (s.diameter() > r)
        throw std::logic_error(std::string(where) + ": generated candidate has diameter " +
                               std::to_string(s.diameter()) + " > " + std::to_string(r));
}

// Closed-form candidates are built against the whole cube and then cut down
// to the family.
std::vector<VertexSet> cube_neighborhood(GroundSet g, VertexSet a) {
    std::vector<VertexSet> out{a};
    for (int i = 1; i <= g.m(); ++i) out.push_back(a ^ VertexSet::of({i}));
    return out;
}

Simplex restrict_to(std::vector<VertexSet> vs, const Family& f) {
    std::erase_if(vs, [&](VertexSet v) { return !f.contains(v); });
    return Simplex(std::move(vs));
}

}  // namespace

std::vector<std::vector<std::uint32_t>> maximal_cliques(const DistanceGraph& g) {
    const std::size_t n = g.size();
    if (n == 0) return {};
    const auto order = degeneracy_order(g);
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

    const std::size_t words = g.words();
    std::vector<std::vector<std::vector<std::uint32_t>>> found(parallel::thread_count());
    parallel::for_chunks(n, [&](std::size_t begin, std::size_t end, unsigned worker) {
        CliqueSearch search(g, found[worker]);
        std::vector<std::uint64_t> p(words), x(words);
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint32_t v = order[i];
            std::fill(p.begin(), p.end(), 0);
            std::fill(x.begin(), x.end(), 0);
            const auto row = g.row(v);
            for (std::size_t w = 0; w < words; ++w)
                for (std::uint64_t bits = row[w]; bits != 0; bits &= bits - 1) {
                    const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    auto& target = position[u] > i ? p : x;
                    target[u / 64] |= std::uint64_t{1} << (u % 64);
                }
            search.run_from(v, p, x);
        }
    });

    std::vector<std::vector<std::uint32_t>> cliques;
    for (auto& part : found)
        for (auto& c : part) cliques.push_back(std::move(c));
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

Complex vr(const Family& f, int r) {
    if (r < 0) throw std::invalid_argument("VR scale must be nonnegative");
    const DistanceGraph g(f, r);
    return Complex::from_facets(to_simplices(f, maximal_cliques(g)));
}

Q3Candidates q3_candidates(GroundSet g) {
    const int m = g.m();
    if (m < 4) throw std::invalid_argument("closed-form scale-3 facets need m >= 4");
    if (m > 20) throw std::invalid_argument("closed-form scale-3 facets limited to m <= 20");
    Q3Candidates out;
    const std::uint64_t cube = std::uint64_t{1} << m;

    for (std::uint64_t bits = 0; bits < cube; ++bits) {
        const VertexSet a{bits};
        const auto na = cube_neighborhood(g, a);
        for (int i1 = 1; i1 <= m; ++i1)
            for (int i2 = i1 + 1; i2 <= m; ++i2)
                for (int i3 = i2 + 1; i3 <= m; ++i3) {
                    auto vs = na;
                    vs.push_back(a ^ VertexSet::of({i1, i2}));
                    vs.push_back(a ^ VertexSet::of({i1, i3}));
                    vs.push_back(a ^ VertexSet::of({i2, i3}));
                    out.nbhd_plus_h.emplace_back(std::move(vs));
                }
        for (int i = 1; i <= m; ++i) {
            const VertexSet b = a ^ VertexSet::of({i});
            if (!(a < b)) continue;  // each adjacent pair once
            auto vs = na;
            const auto nb = cube_neighborhood(g, b);
            vs.insert(vs.end(), nb.begin(), nb.end());
            out.adjacent_pairs.emplace_back(std::move(vs));
        }
    }

    // One representative per 4-subcube: the base A disjoint from the index set.
    for (int i1 = 1; i1 <= m; ++i1)
        for (int i2 = i1 + 1; i2 <= m; ++i2)
            for (int i3 = i2 + 1; i3 <= m; ++i3)
                for (int i4 = i3 + 1; i4 <= m; ++i4) {
                    const VertexSet dirs = VertexSet::of({i1, i2, i3, i4});
                    const int idx[4] = {i1, i2, i3, i4};
                    // pair p holds {A^S, A^(dirs \ S)} for the 8 subsets S not containing i1
                    std::vector<VertexSet> offsets;
                    for (unsigned mask = 0; mask < 8; ++mask) {
                        std::uint64_t s = 0;
                        for (int b = 0; b < 3; ++b)
                            if ((mask >> b) & 1u) s |= std::uint64_t{1} << (idx[b + 1] - 1);
                        offsets.emplace_back(s);
                    }
                    for (std::uint64_t bits = 0; bits < cube; ++bits) {
                        const VertexSet a{bits};
                        if ((a & dirs) != VertexSet{}) continue;
                        for (unsigned choice = 0; choice < 256; ++choice) {
                            std::vector<VertexSet> vs;
                            vs.reserve(8);
                            for (unsigned p = 0; p < 8; ++p) {
                                const VertexSet s = offsets[p];
                                vs.push_back(((choice >> p) & 1u) ? a ^ (dirs ^ s) : a ^ s);
                            }
                            out.subcube_choices.emplace_back(std::move(vs));
                        }
                    }
                }
    return out;
}

std::vector<Simplex> q3_facets_closed_form(GroundSet g) {
    Q3Candidates c = q3_candidates(g);
    std::vector<Simplex> all;
    all.reserve(c.nbhd_plus_h.size() + c.adjacent_pairs.size() + c.subcube_choices.size());
    for (auto* part : {&c.nbhd_plus_h, &c.adjacent_pairs, &c.subcube_choices})
        for (Simplex& s : *part) {
            check_diameter(s, 3, "q3_facets_closed_form");
            all.push_back(std::move(s));
        }
    const Complex k = Complex::from_facets(std::move(all));
    return {k.facets().begin(), k.facets().end()};
}

std::vector<Simplex> f12_facets(int n) {
    if (n < 3) throw std::invalid_argument("f12_facets needs n >= 3");
    const GroundSet g(n);
    const std::vector<int> levels{1, 2};
    const Family f = levels_family(g, levels);
    const auto n_empty = cube_neighborhood(g, VertexSet{});
    std::vector<Simplex> candidates;
    for (int i1 = 1; i1 <= n; ++i1) {
        auto vs = n_empty;
        const auto ni = cube_neighborhood(g, VertexSet::of({i1}));
        vs.insert(vs.end(), ni.begin(), ni.end());
        candidates.push_back(restrict_to(std::move(vs), f));
        for (int i2 = i1 + 1; i2 <= n; ++i2)
            for (int i3 = i2 + 1; i3 <= n; ++i3) {
                auto hs = n_empty;
                hs.push_back(VertexSet::of({i1, i2}));
                hs.push_back(VertexSet::of({i1, i3}));
                hs.push_back(VertexSet::of({i2, i3}));
                candidates.push_back(restrict_to(std::move(hs), f));
            }
    }
    for (const Simplex& s : candidates) check_diameter(s, 3, "f12_facets");
    const Complex k = Complex::from_facets(std::move(candidates));
    return {k.facets().begin(), k.facets().end()};
}

std::vector<Simplex> fn_fn1_facets(int n, GroundSet g) {
    const int m = g.m();
    if (n < 1 || n + 1 > m) throw std::invalid_argument("fn_fn1_facets needs 1 <= n and n+1 <= m");
    const std::vector<int> levels{n, n + 1};
    const Family f = levels_family(g, levels);
    std::vector<Simplex> candidates;

    auto add_pair_candidates = [&](int size_a) {
        if (size_a < 0 || size_a + 1 > m) return;
        for (VertexSet a : level_family(g, size_a)) {
            const auto na = cube_neighborhood(g, a);
            for (int i = 1; i <= m; ++i) {
                if (a.contains(i)) continue;
                const VertexSet b = a ^ VertexSet::of({i});
                auto vs = na;
                const auto nb = cube_neighborhood(g, b);
                vs.insert(vs.end(), nb.begin(), nb.end());
                candidates.push_back(restrict_to(std::move(vs), f));
            }
        }
    };
    add_pair_candidates(n - 1);
    add_pair_candidates(n);
    add_pair_candidates(n + 1);

    auto add_h_candidates = [&](int size_a, bool inside) {
        if (size_a < 0 || size_a > m) return;
        for (VertexSet a : level_family(g, size_a)) {
            const auto na = cube_neighborhood(g, a);
            for (int i1 = 1; i1 <= m; ++i1)
                for (int i2 = i1 + 1; i2 <= m; ++i2)
                    for (int i3 = i2 + 1; i3 <= m; ++i3) {
                        const bool all_in = a.contains(i1) && a.contains(i2) && a.contains(i3);
                        const bool all_out = !a.contains(i1) && !a.contains(i2) && !a.contains(i3);
                        if (inside ? !all_in : !all_out) continue;
                        auto vs = na;
                        vs.push_back(a ^ VertexSet::of({i1, i2}));
                        vs.push_back(a ^ VertexSet::of({i1, i3}));
                        vs.push_back(a ^ VertexSet::of({i2, i3}));
                        candidates.push_back(restrict_to(std::move(vs), f));
                    }
        }
    };
    add_h_candidates(n - 1, false);
    add_h_candidates(n + 2, true);

    for (const Simplex& s : candidates) check_diameter(s, 3, "fn_fn1_facets");
    const Complex k = Complex::from_facets(std::move(candidates));
    return {k.facets().begin(), k.facets().end()};
}

FacetReport crosscheck(std::span<const Simplex> closed_form, const Family& f, int r) {
    std::vector<Simplex> closed(closed_form.begin(), closed_form.end());
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
    const Complex brute = vr(f, r);
    const auto clique = brute.facets();  // already canonical

    FacetReport report;
    report.closed_form_count = closed.size();
    report.clique_count = clique.size();
    std::set_difference(closed.begin(), closed.end(), clique.begin(), clique.end(),
                        std::back_inserter(report.only_closed_form));
    std::set_difference(clique.begin(), clique.end(), closed.begin(), closed.end(),
                        std::back_inserter(report.only_clique));
    return report;
}

void write_report(std::ostream& out, const FacetReport& report) {
    out << "closed_form " << report.closed_form_count << " clique " << report.clique_count
        << " mismatches " << report.mismatch_count() << '\n';
    auto dump = [&](const char* tag, const std::vector<Simplex>& list) {
        for (const Simplex& s : list) {
            out << tag << ' ';
            for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ";" : "") << to_string(s[i]);
            out << '\n';
        }
    };
    dump("closed-only", report.only_closed_form);
    dump("clique-only", report.only_clique);
}

}  // namespace hcvr
