#include "hcvr/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace hcvr::oracle {

namespace {

std::uint64_t narrow(const BigInt& v) {
    if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max()))
        throw std::out_of_range("predicted Betti number does not fit in 64 bits");
    return static_cast<std::uint64_t>(v);
}

// r_A on the raw bit pattern; |A| < 4 gives 0.
std::uint64_t r_native(std::uint64_t bits) {
    static constexpr std::uint64_t choose3[64] = {
        0, 0, 0, 1, 4, 10, 20, 35, 56, 84, 120, 165, 220, 286, 364, 455, 560, 680, 816, 969, 1140, 1330,
        1540, 1771, 2024, 2300, 2600, 2925, 3276, 3654, 4060, 4495, 4960, 5456, 5984, 6545, 7140, 7770,
        8436, 9139, 9880, 10660, 11480, 12341, 13244, 14190, 15180, 16215, 17296, 18424, 19600, 20825,
        22100, 23426, 24804, 26235, 27720, 29260, 30856, 32509, 34220, 35990, 37820, 39711};
    std::uint64_t total = 0;
    int position = 0;  // 1-based index of the current element
    int previous = 0;
    while (bits) {
        const int element = std::countr_zero(bits) + 1;
        bits &= bits - 1;
        ++position;
        if (position >= 4) total += static_cast<std::uint64_t>(element - previous - 1) * choose3[position - 1];
        previous = element;
    }
    return total;
}

}  // namespace

BigInt binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt out = 1;
    for (int i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;  // exact: out is C(n-k+i, i) here
    }
    return out;
}

BigInt pow2(int e) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    return BigInt(1) << e;
}

GapProfile gap_profile(VertexSet a) {
    const auto elems = a.elements();
    if (elems.size() < 4) throw std::invalid_argument("gap profile needs |A| >= 4, got " + to_string(a));
    GapProfile out{a, {}};
    for (std::size_t k = 3; k < elems.size(); ++k) out.gaps.push_back(elems[k] - elems[k - 1] - 1);
    return out;
}

BigInt r_value(VertexSet a) {
    const GapProfile p = gap_profile(a);
    BigInt total = 0;
    for (std::size_t i = 0; i < p.gaps.size(); ++i)
        total += BigInt(p.gaps[i]) * binomial(static_cast<int>(i) + 3, 3);  // k = i+4, C(k-1,3)
    return total;
}

bool Prediction::matches(const BettiVector& computed) const {
    for (int d : computed.computed_dims())
        if (computed[d] != betti[d]) return false;
    return true;
}

BigInt q3_top(int m) { return m < 4 ? BigInt(0) : pow2(m - 4) * binomial(m, 4); }

BigInt q3_middle(int m) {
    BigInt total = 0;
    for (int i = 4; i <= m - 1; ++i) total += pow2(i - 4) * binomial(i, 4);
    return total;
}

Prediction predicted_q3(GroundSet g) {
    if (g.m() < 5) throw std::invalid_argument("the scale-3 formula needs m >= 5");
    Prediction p;
    p.source = "VR(Q_m;3) wedge of S^7 and S^4";
    p.betti.set(7, narrow(q3_top(g.m())));
    p.betti.set(4, narrow(q3_middle(g.m())));
    return p;
}

Prediction predicted_cross_polytope(GroundSet g) {
    if (g.m() < 2 || g.m() > 7) throw std::invalid_argument("cross-polytope prediction needs 2 <= m <= 7");
    Prediction p;
    p.source = "VR(Q_m;m-1) cross-polytope boundary";
    p.betti.set((1 << (g.m() - 1)) - 1, 1);
    return p;
}

Increment predicted_increment(VertexSet a) {
    if (a.size() < 4) return {0, 0, false};
    return {binomial(a.size(), 4), r_value(a), true};
}

BigInt c_scale2(GroundSet g) {
    const int m = g.m();
    if (m < 2) throw std::invalid_argument("c_m needs m >= 2");
    BigInt total = 0;
    for (int i = 1; i < m; ++i)
        for (int j = 0; j < i; ++j) total += BigInt(j + 1) * (pow2(m - 2) - pow2(i - 1));
    return total;
}

Prediction predicted_scale2(GroundSet g) {
    Prediction p;
    p.source = "VR(Q_m;2) wedge of c_m S^3";
    p.betti.set(3, narrow(c_scale2(g)));
    return p;
}

Prediction predicted_small_scale(GroundSet g, int r) {
    Prediction p;
    const int m = g.m();
    if (r == 0) {
        p.source = "VR(Q_m;0) wedge of S^0";
        p.betti.set(0, narrow(pow2(m) - 1));
    } else if (r == 1) {
        if (m < 2) throw std::invalid_argument("scale-1 formula needs m >= 2");
        p.source = "VR(Q_m;1) wedge of S^1";
        p.betti.set(1, narrow(BigInt(m - 2) * pow2(m - 1) + 1));
    } else {
        throw std::invalid_argument("small-scale prediction needs r in {0, 1}");
    }
    return p;
}

Prediction predicted_f123(int n) {
    if (n < 3) throw std::invalid_argument("F1∪F2∪F3 prediction needs n >= 3");
    Prediction p;
    p.source = "VR(F1∪F2∪F3;3) wedge of C(n,4) S^6";
    if (n == 3) {
        p.source = "VR(F1∪F2∪F3;3) cone at n=3";
        return p;
    }
    p.betti.set(6, narrow(binomial(n, 4)));
    return p;
}

Prediction predicted_link(VertexSet a) {
    if (a.size() < 4) throw std::invalid_argument("link prediction needs |A| >= 4, got " + to_string(a));
    Prediction p;
    p.source = "lk(A) in VR(F_{<=A};3)";
    p.betti.set(6, narrow(binomial(a.size(), 4)));
    p.betti.set(3, narrow(r_value(a)));
    return p;
}

Prediction predicted_link_f123(VertexSet a) {
    if (a.size() != 3) throw std::invalid_argument("link prediction in F1∪F2∪F3 needs |A| = 3");
    if (a.min_element() < 2) throw std::invalid_argument("link prediction in F1∪F2∪F3 needs min A >= 2");
    Prediction p;
    p.source = "lk(A) in VR((F1∪F2∪F3)∩F_{<=A};3)";
    p.betti.set(5, static_cast<std::uint64_t>(a.min_element() - 1));
    return p;
}

Sides identity_f123(int n) {
    if (n < 4) throw std::invalid_argument("identity needs n >= 4");
    BigInt lhs = 0;
    for (int k = 2; k <= n - 2; ++k) lhs += BigInt(k - 1) * binomial(n - k, 2);
    return {lhs, binomial(n, 4)};
}

Sides identity_A1(int m) {
    if (m < 5) throw std::invalid_argument("identity needs m >= 5");
    BigInt lhs = 0;
    for (int i = 3; i <= m - 1; ++i) lhs += binomial(m - 2, i - 1) * binomial(i, 3);
    for (int k = 3; k <= m - 2; ++k)
        for (int i = 3; i <= k; ++i) lhs += binomial(k - 1, i - 1) * binomial(i, 3);
    return {lhs, pow2(m - 4) * binomial(m - 1, 3)};
}

Sides identity_A2(int m) {
    if (m < 6) throw std::invalid_argument("identity needs m >= 6");
    BigInt lhs = 0;
    for (int i = 4; i <= m - 2; ++i) lhs += pow2(i - 4) * binomial(i, 4);
    for (int k = 3; k <= m - 2; ++k)
        for (int i = 3; i <= k; ++i) lhs += BigInt(m - k - 1) * binomial(k - 1, i - 1) * binomial(i, 3);
    return {lhs, pow2(m - 5) * binomial(m - 1, 4)};
}

Telescoping telescoping(int m) {
    if (m < 4 || m > 24) throw std::invalid_argument("telescoping check needs 4 <= m <= 24");
    // Sum by walking every subset: independent of the closed forms.  At
    // m <= 24 both sums fit comfortably in 64 bits.
    std::uint64_t choose4[25] = {};
    for (int n = 4; n <= 24; ++n) choose4[n] = static_cast<std::uint64_t>(binomial(n, 4));
    std::uint64_t top = 0;
    std::uint64_t middle = 0;
    const std::uint64_t limit = std::uint64_t{1} << m;
    for (std::uint64_t bits = 0; bits < limit; ++bits) {
        top += choose4[std::popcount(bits)];
        middle += r_native(bits);
    }
    return {{BigInt(top), q3_top(m)}, {BigInt(middle), q3_middle(m)}};
}

}  // namespace hcvr::oracle
