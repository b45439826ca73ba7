#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "oppq/sl2.hpp"

namespace oppq::kloosterman {

using i64 = std::int64_t;
using cplx = std::complex<double>;

// S(m, n; c; R, N). R is an SL(2,Z) matrix whose lower-left entry is
// congruent to c mod N; the sum only depends on R mod N.
struct KloostermanQuery {
    i64 m = 0, n = 0;
    i64 c = 1;
    sl2::Mat2i R;
    i64 N = 1;
};

// U[c, N; a0, b0, d0]: pairs (a, d) in (Z/cNZ)^2 with a = a0, d = d0 (mod N)
// and a d = 1 + b0 c (mod cN). Ordered by d, then a. |pairs| <= c.
struct USet {
    i64 c = 1, N = 1;
    std::vector<std::pair<i64, i64>> pairs;
};

USet u_set(i64 c, i64 N, i64 a0, i64 b0, i64 d0);

cplx kloosterman_sum(const USet& u, i64 m, i64 n);
cplx kloosterman_sum(const KloostermanQuery& q);

// Lift of a residue matrix mod q (with det = 1 mod q) to an SL(2,Z) matrix,
// residues completed prime power by prime power through CRT.
sl2::Mat2i sl2_lift(i64 a, i64 b, i64 c, i64 d, i64 q);

// Factor comparison across a coprime split cN = M1*M2.
struct MultSplit {
    cplx lhs, rhs;
    double err;
    KloostermanQuery factor1, factor2;
};
MultSplit multiplicativity_check(const KloostermanQuery& q, i64 M1, i64 M2);

// closed form for S(m, 0; c; R, N); satisfies |value| <= gcd(c, m)
cplx n0_closed_form(i64 m, i64 c, const sl2::Mat2i& R, i64 N);

// max over the sample grid of |S| / (sigma(c) gcd(m,n,c)^{1/2} c^{1/2})
struct WeilAudit {
    double max_ratio = 0;
    KloostermanQuery argmax;
};
WeilAudit weil_audit(i64 c_max, i64 N, const sl2::Mat2i& R,
                     std::span<const std::pair<i64, i64>> mn_samples);

// B_alpha(X) = sum_{1<=c<=X} e(c alpha) c1 phi(c2), split relative to N,
// plus the majorant X^2 sum_{j<=X} min(1/j^2, 1/(X j <j alpha>)).
struct BAlphaSum {
    cplx value;
    double majorant;
};
BAlphaSum b_alpha_sum(double alpha, i64 X, i64 N);

// one representative per class of SL(2, Z/N), lifted to SL(2,Z)
std::vector<sl2::Mat2i> residue_classes(i64 N);

}  // namespace oppq::kloosterman
