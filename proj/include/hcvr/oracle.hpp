#pragma once

// Closed-form predictions for the complexes studied here, in exact integer
// arithmetic.

#include <string>
#include <utility>
#include <vector>

#include "hcvr/homology.hpp"
#include "hcvr/hypercube.hpp"

namespace hcvr::oracle {

/// C(n, k); zero outside 0 <= k <= n.
BigInt binomial(int n, int k);
BigInt pow2(int e);

/// A = {i_1 < ... < i_n} and the gaps r_k = i_k - i_{k-1} - 1, k = 4..n.
struct GapProfile {
    VertexSet base;
    std::vector<int> gaps;  // gaps[0] is r_4
};

/// Throws std::invalid_argument when |A| < 4.
GapProfile gap_profile(VertexSet a);

/// r_A = sum_k r_k C(k-1, 3).  Throws std::invalid_argument when |A| < 4.
BigInt r_value(VertexSet a);

/// Predicted reduced Betti numbers plus a tag naming the statement they come
/// from.  Dimensions not set are predicted to be zero.
struct Prediction {
    BettiVector betti;
    std::string source;

    /// True when every computed dimension of `computed` agrees.
    bool matches(const BettiVector& computed) const;
};

/// beta_7 = 2^{m-4} C(m,4), beta_4 = sum_{i=4}^{m-1} 2^{i-4} C(i,4).
BigInt q3_top(int m);
BigInt q3_middle(int m);

/// VR(Q_m; 3).  Throws std::invalid_argument for m < 5.
Prediction predicted_q3(GroundSet g);

/// VR(Q_m; m-1) is the boundary of a cross-polytope: one sphere of dimension
/// 2^{m-1} - 1.  Throws std::invalid_argument for m < 2 or m > 7.
Prediction predicted_cross_polytope(GroundSet g);

/// Spheres added by the vertex A in the ordered sweep: (C(|A|,4), r_A).
/// `defined` is false (and both counts zero) when |A| < 4.
struct Increment {
    BigInt top;     // dimension 7
    BigInt middle;  // dimension 4
    bool defined = true;
};
Increment predicted_increment(VertexSet a);

/// c_m = sum_{0 <= j < i < m} (j+1)(2^{m-2} - 2^{i-1}).  Throws for m < 2.
BigInt c_scale2(GroundSet g);

/// VR(Q_m; 2): beta_3 = c_m.
Prediction predicted_scale2(GroundSet g);

/// r = 0: beta_0 = 2^m - 1.  r = 1: beta_1 = (m-2) 2^{m-1} + 1 (m >= 2).
Prediction predicted_small_scale(GroundSet g, int r);

/// VR(F_1^n ∪ F_2^n ∪ F_3^n; 3): beta_6 = C(n,4); all zero at n = 3.
/// Throws std::invalid_argument for n < 3.
Prediction predicted_f123(int n);

/// Link of A in VR(F_{⪯A}; 3): beta_6 = C(|A|,4), beta_3 = r_A.
/// Throws std::invalid_argument when |A| < 4.
Prediction predicted_link(VertexSet a);

/// Link of A = {i1<i2<i3} in VR((F_1∪F_2∪F_3) ∩ F_{⪯A}; 3): beta_5 = i1 - 1.
/// Throws std::invalid_argument unless |A| = 3 and i1 >= 2.
Prediction predicted_link_f123(VertexSet a);

using Sides = std::pair<BigInt, BigInt>;

/// sum_{k=2}^{n-2} (k-1) C(n-k,2)  vs  C(n,4).  n >= 4.
Sides identity_f123(int n);

/// Two-part sum vs 2^{m-4} C(m-1,3).  m >= 5.
Sides identity_A1(int m);

/// Two-part sum vs 2^{m-5} C(m-1,4).  m >= 6.
Sides identity_A2(int m);

/// Sum of predicted_increment over all A ⊆ [m] with |A| >= 4, against
/// (q3_top(m), q3_middle(m)).  Each side is (top, middle).  m <= 24.
struct Telescoping {
    Sides top;
    Sides middle;
    bool holds() const { return top.first == top.second && middle.first == middle.second; }
};
Telescoping telescoping(int m);

}  // namespace hcvr::oracle
