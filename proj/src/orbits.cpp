#include "oppq/orbits.hpp"

#include <numeric>
#include <stdexcept>
#include <tuple>

#include "oppq/numtheory.hpp"

namespace oppq::orbits {

std::pair<std::vector<i64>, std::vector<i64>> apply(const sl2::Mat2i& T,
                                                    std::span<const i64> q,
                                                    std::span<const i64> r) {
    size_t k = q.size();
    std::vector<i64> q2(k), r2(k);
    for (size_t i = 0; i < k; ++i) {
        q2[i] = T.a * q[i] + T.b * r[i];
        r2[i] = T.c * q[i] + T.d * r[i];
    }
    return {std::move(q2), std::move(r2)};
}

OrbitClass classify_orbit(std::span<const i64> q, std::span<const i64> r) {
    if (q.size() != r.size() || q.empty())
        throw std::invalid_argument("classify_orbit: q, r must have equal length k >= 1");
    bool zero = true;
    for (size_t i = 0; i < q.size(); ++i)
        if (q[i] || r[i]) { zero = false; break; }
    if (zero) return OrbitClass::Zero;
    // rank of the 2 x k matrix with rows q, r: all 2x2 minors vanish <=> rank 1
    for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = i + 1; j < q.size(); ++j)
            if (q[i] * r[j] - q[j] * r[i] != 0) return OrbitClass::B;
    return OrbitClass::A;
}

CanonicalBRep canonical_b_rep(std::span<const i64> q_in, std::span<const i64> r_in) {
    if (classify_orbit(q_in, r_in) != OrbitClass::B)
        throw std::domain_error("canonical_b_rep: input is not in a B-orbit");
    const int k = int(q_in.size());
    std::vector<i64> q(q_in.begin(), q_in.end()), r(r_in.begin(), r_in.end());
    sl2::Mat2i U;  // accumulated transform

    // l1: first index where the column (q_j, r_j) is nonzero
    int l1 = 0;
    while (q[l1] == 0 && r[l1] == 0) ++l1;

    // rotate that column to (0, g) with g = gcd > 0
    {
        i64 g = std::gcd(std::abs(q[l1]), std::abs(r[l1]));
        i64 u = q[l1] / g, w = r[l1] / g;
        // T = [[w, -u], [x, y]] with det = w y + u x = 1
        auto e = numtheory::ext_gcd(u, w);  // u x + w y = 1
        i64 x = e.x, y = e.y;
        // pin the Bezout pair: least nonnegative x mod |w| (w = 0 forces u = +-1)
        if (w != 0) {
            i64 t = ((x % std::llabs(w)) + std::llabs(w)) % std::llabs(w);
            y += (x - t) / w * u;
            x = t;
        }
        sl2::Mat2i T{w, -u, x, y};
        std::tie(q, r) = apply(T, q, r);
        U = T * U;
    }

    // l2: first index with q nonzero (exists: not an A-orbit)
    int l2 = l1 + 1;
    while (q[l2] == 0) ++l2;

    // lower-triangular shear puts r_{l2} into [0, |q_{l2}|)
    {
        i64 qq = q[l2];
        i64 rr = ((r[l2] % std::llabs(qq)) + std::llabs(qq)) % std::llabs(qq);
        i64 x = (rr - r[l2]) / qq;
        sl2::Mat2i T{1, 0, x, 1};
        std::tie(q, r) = apply(T, q, r);
        U = T * U;
    }

    CanonicalBRep out;
    out.rep = {k, std::move(q), std::move(r), OrbitClass::B};
    out.transform = U;
    out.l1 = l1 + 1;
    out.l2 = l2 + 1;
    return out;
}

}  // namespace oppq::orbits
