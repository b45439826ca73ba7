#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oppq/sl2.hpp"

namespace oppq::orbits {

using i64 = std::int64_t;

enum class OrbitClass { Zero, A, B };

// eta = (q; r) in Z^{2k} with its SL(2,Z)-orbit class.
struct OrbitVector {
    int k = 1;
    std::vector<i64> q, r;
    OrbitClass cls = OrbitClass::Zero;
};

// T.(q; r) = (a q + b r ; c q + d r)
std::pair<std::vector<i64>, std::vector<i64>> apply(const sl2::Mat2i& T,
                                                    std::span<const i64> q,
                                                    std::span<const i64> r);

// Zero iff q = r = 0; A iff the rows q, r are proportional over Q; B otherwise.
OrbitClass classify_orbit(std::span<const i64> q, std::span<const i64> r);

// Canonical representative of a B-orbit: indices 1 <= l1 < l2 <= k with
// r_j = 0 for j < l1, q_j = 0 for j < l2, r_{l1} > 0, 0 <= r_{l2} < |q_{l2}|.
// transform maps the input onto rep. Throws std::domain_error off class B.
struct CanonicalBRep {
    OrbitVector rep;
    sl2::Mat2i transform;
    int l1 = 0, l2 = 0;  // 1-based
};
CanonicalBRep canonical_b_rep(std::span<const i64> q, std::span<const i64> r);

}  // namespace oppq::orbits
