#include <doctest.h>

#include <random>
#include <sstream>

#include "hcvr/errors.hpp"
#include "hcvr/homology.hpp"
#include "hcvr/parallel.hpp"
#include "hcvr/vietoris_rips.hpp"
#include "support.hpp"

using namespace hcvr;

namespace {

const VertexSet a = VertexSet::of({1}), b = VertexSet::of({2}), c = VertexSet::of({3}),
                d = VertexSet::of({4});

Complex cycle4() { return Complex::from_facets({{a, b}, {b, c}, {c, d}, {d, a}}); }

// ∂_{k-1} ∘ ∂_k over GF(2): every (k-2)-face must be hit an even number of times.
void check_dd_zero(const Complex& k, int dim) {
    const BoundaryMatrix hi = boundary(k, dim);
    const BoundaryMatrix lo = boundary(k, dim - 1);
    for (std::uint64_t j = 0; j < hi.cols; ++j) {
        std::map<std::uint32_t, int> hits;
        for (std::uint32_t r : hi.column(j))
            if (!lo.entries.empty())
                for (std::uint32_t rr : lo.column(r)) ++hits[rr];
        for (const auto& [row, n] : hits) CHECK(n % 2 == 0);
    }
}

void check_against_naive(const Complex& k) {
    const auto want = testing::naive_betti(testing::facets_of(k));
    const BettiVector got = betti_all(k);
    for (const auto& [dim, v] : want) {
        CAPTURE(dim);
        CHECK(static_cast<long long>(got[dim]) == v);
    }
}

}  // namespace

TEST_CASE("boundary matrices") {
    const Complex tri = Complex::from_facets({{a, b, c}});
    const BoundaryMatrix m1 = boundary(tri, 1);
    CHECK(m1.cols == 3);
    CHECK(m1.rows == 3);
    for (std::uint64_t j = 0; j < m1.cols; ++j) {
        const auto col = m1.column(j);
        CHECK(col.size() == 2);
        CHECK(col[0] < col[1]);
    }
    const BoundaryMatrix m0 = boundary(tri, 0);
    CHECK(m0.rows == 1);
    CHECK(m0.cols == 3);
    CHECK(boundary(tri, 0, false).rows == 0);
    CHECK(gf2_rank_sparse(boundary(cycle4(), 1)) == 3);
    CHECK(gf2_rank_dense(boundary(cycle4(), 1)) == 3);

    std::ostringstream out;
    write_triplets(out, m1);
    CHECK(out.str() == "0 0\n0 1\n1 0\n1 2\n2 1\n2 2\n");
}

TEST_CASE("boundary of a boundary vanishes") {
    const Complex q = vr(power_set(GroundSet(5)), 3);
    for (int k = 1; k <= q.dimension(); ++k) check_dd_zero(q, k);
    const Complex q2 = vr(power_set(GroundSet(4)), 2);
    for (int k = 1; k <= q2.dimension(); ++k) check_dd_zero(q2, k);
}

TEST_CASE("sparse and dense ranks agree") {
    for (int m = 3; m <= 5; ++m)
        for (int r = 1; r <= 3; ++r) {
            const Complex k = vr(power_set(GroundSet(m)), r);
            for (int d2 = 0; d2 <= std::min(k.dimension(), 6); ++d2) {
                const BoundaryMatrix bm = boundary(k, d2);
                if (bm.rows > 4000) continue;
                CHECK(gf2_rank_sparse(bm) == gf2_rank_dense(bm));
            }
        }
}

TEST_CASE("betti_all against the naive oracle") {
    check_against_naive(cycle4());
    check_against_naive(Complex::from_facets({{a}}));
    check_against_naive(Complex::from_facets({{a}, {b}, {c}}));
    check_against_naive(vr(power_set(GroundSet(3)), 1));
    check_against_naive(vr(power_set(GroundSet(3)), 2));
    check_against_naive(vr(power_set(GroundSet(4)), 1));
    std::mt19937_64 rng(31);
    for (int t = 0; t < 15; ++t) {
        std::vector<VertexSet> pts;
        for (std::uint64_t bits = 0; bits < 16; ++bits)
            if (rng() % 2) pts.push_back(VertexSet{bits});
        check_against_naive(vr(Family(GroundSet(4), pts), 1 + static_cast<int>(rng() % 2)));
    }
}

TEST_CASE("small complexes") {
    const BettiVector pt = betti_all(Complex::from_facets({{a}}));
    CHECK(pt.computed(0));
    CHECK(pt[0] == 0);
    const Complex oct = Complex::from_facets({{a, c, VertexSet::of({5})}, {a, c, VertexSet::of({6})},
                                              {a, d, VertexSet::of({5})}, {a, d, VertexSet::of({6})},
                                              {b, c, VertexSet::of({5})}, {b, c, VertexSet::of({6})},
                                              {b, d, VertexSet::of({5})}, {b, d, VertexSet::of({6})}});
    const BettiVector bo = betti_all(oct);
    CHECK(bo[2] == 1);
    CHECK(bo[0] == 0);
    CHECK(bo[1] == 0);
    CHECK(betti_all(vr(power_set(GroundSet(3)), 2))[3] == 1);
    CHECK(betti_all(Complex::from_facets({{a}, {b}, {c}}))[0] == 2);
    HomologyOptions unreduced;
    unreduced.reduced = false;
    CHECK(betti_window(Complex::from_facets({{a}, {b}}), 0, 0, nullptr, unreduced)[0] == 2);
}

TEST_CASE("windows, clearing and schedule do not change the answer") {
    const Complex q = vr(power_set(GroundSet(5)), 3);
    const BettiVector full = betti_all(q);
    CHECK(full[4] == 1);
    CHECK(full[7] == 10);
    for (int lo = 0; lo <= 9; ++lo)
        for (int hi = lo; hi <= std::min(lo + 2, 11); ++hi) {
            const BettiVector w = betti_window(q, lo, hi);
            for (int d2 = lo; d2 <= hi; ++d2) {
                CHECK(w.computed(d2));
                CHECK(w[d2] == full[d2]);
            }
            CHECK_FALSE(w.computed(hi + 1));
        }
    HomologyOptions no_clear;
    no_clear.clearing = false;
    CHECK(betti_window(q, 0, 9, nullptr, no_clear) == full);
    parallel::set_thread_count(4);
    CHECK(betti_all(vr(power_set(GroundSet(5)), 3)) == full);
    parallel::set_thread_count(0);
    CHECK_THROWS_AS(betti_window(q, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(betti_window(q, -1, 2), std::invalid_argument);
}

TEST_CASE("Euler characteristic matches the Betti numbers") {
    for (int m = 3; m <= 5; ++m)
        for (int r = 0; r <= 3; ++r) {
            const Complex k = vr(power_set(GroundSet(m)), r);
            HomologyStats st;
            const BettiVector bv = betti_all(k, &st);
            CHECK(euler(k).chi - 1 == bv.alternating_sum());
            for (const auto& [dim, f] : st.face_counts) CHECK(f == k.face_count(dim));
        }
}

TEST_CASE("elementary divisors") {
    // diag(2, 3) ~ diag(1, 6)
    const std::vector<IntegerEntry> e{{0, 0, 2}, {1, 1, 3}};
    const auto dv = elementary_divisors(2, 2, e);
    REQUIRE(dv.size() == 2);
    CHECK(dv[0] == 1);
    CHECK(dv[1] == 6);
    // [[2, 4], [6, 8]] has determinant -8 and gcd 2
    const std::vector<IntegerEntry> e2{{0, 0, 2}, {0, 1, 4}, {1, 0, 6}, {1, 1, 8}};
    const auto dv2 = elementary_divisors(2, 2, e2);
    REQUIRE(dv2.size() == 2);
    CHECK(dv2[0] == 2);
    CHECK(dv2[1] == 4);
    CHECK(elementary_divisors(3, 3, {}).empty());
    // large entries force the arbitrary-precision path
    const std::int64_t big = std::int64_t{1} << 40;
    const std::vector<IntegerEntry> e3{{0, 0, big}, {0, 1, 1}, {1, 0, big}, {1, 1, big}};
    const auto dv3 = elementary_divisors(2, 2, e3);
    REQUIRE(dv3.size() == 2);
    CHECK(dv3[0] == 1);
    CHECK(dv3[1] == BigInt(big) * big - big);
}

TEST_CASE("integral homology of a real projective plane has torsion") {
    // six-vertex RP^2
    auto v = [](int i) { return VertexSet::of({i}); };
    const Complex rp2 = Complex::from_facets({{v(1), v(2), v(3)}, {v(1), v(3), v(4)}, {v(1), v(4), v(5)},
                                              {v(1), v(5), v(6)}, {v(1), v(6), v(2)}, {v(2), v(3), v(5)},
                                              {v(3), v(4), v(6)}, {v(4), v(5), v(2)}, {v(5), v(6), v(3)},
                                              {v(6), v(2), v(4)}});
    const IntegerHomology h1 = betti_integer(rp2, 1);
    CHECK(h1.rank == 0);
    REQUIRE(h1.torsion.size() == 1);
    CHECK(h1.torsion[0] == 2);
    CHECK(betti_integer(rp2, 2).rank == 0);
    // over GF(2) both show up
    CHECK(betti_all(rp2)[1] == 1);
    CHECK(betti_all(rp2)[2] == 1);
}

TEST_CASE("integral homology agrees with GF(2) on the cube complexes") {
    const Complex q4 = vr(power_set(GroundSet(4)), 3);
    const IntegerHomology h7 = betti_integer(q4, 7);
    CHECK(h7.rank == 1);
    CHECK(h7.torsion.empty());
    const Complex simplex = Complex::from_facets({{a, b, c, d}});
    for (int k = 1; k <= 3; ++k) {
        CHECK(betti_integer(simplex, k).rank == 0);
        CHECK(betti_integer(simplex, k).torsion.empty());
    }
    const Complex q5 = vr(power_set(GroundSet(5)), 3);
    const IntegerHomology h4 = betti_integer(q5, 4);
    CHECK(h4.rank == 1);
    CHECK(h4.torsion.empty());
    CHECK_THROWS_AS(betti_integer(q5, 5, 1000), ResourceError);
}
