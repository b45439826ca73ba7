#include <doctest.h>

#include "oppq/orbits.hpp"
#include "oracles.hpp"

using namespace oppq::orbits;
using oppq::sl2::Mat2i;

namespace {

void check_canonical_conditions(const CanonicalBRep& rep) {
    const auto& q = rep.rep.q;
    const auto& r = rep.rep.r;
    int l1 = rep.l1 - 1, l2 = rep.l2 - 1;
    REQUIRE(rep.l1 >= 1);
    REQUIRE(rep.l1 < rep.l2);
    REQUIRE(rep.l2 <= rep.rep.k);
    for (int j = 0; j < l1; ++j) CHECK(r[j] == 0);
    for (int j = 0; j < l2; ++j) CHECK(q[j] == 0);
    CHECK(r[l1] > 0);
    CHECK(q[l2] != 0);
    CHECK(r[l2] >= 0);
    CHECK(r[l2] < (i64)std::llabs(q[l2]));
}

}  // namespace

TEST_CASE("classify_orbit examples") {
    CHECK(classify_orbit(std::vector<i64>{0, 0}, std::vector<i64>{1, 0}) == OrbitClass::A);
    CHECK(classify_orbit(std::vector<i64>{0, 1}, std::vector<i64>{1, 0}) == OrbitClass::B);
    CHECK(classify_orbit(std::vector<i64>{2, 0}, std::vector<i64>{1, 0}) == OrbitClass::A);
    CHECK(classify_orbit(std::vector<i64>{0, 0}, std::vector<i64>{0, 0}) == OrbitClass::Zero);
}

TEST_CASE("classify_orbit agrees with brute-force orbit search") {
    for (i64 q1 = -3; q1 <= 3; ++q1)
        for (i64 q2 = -3; q2 <= 3; ++q2)
            for (i64 r1 = -3; r1 <= 3; ++r1)
                for (i64 r2 = -3; r2 <= 3; ++r2) {
                    std::vector<i64> q{q1, q2}, r{r1, r2};
                    auto cls = classify_orbit(q, r);
                    if (cls == OrbitClass::Zero) {
                        REQUIRE(q1 == 0);
                        REQUIRE(q2 == 0);
                        REQUIRE(r1 == 0);
                        REQUIRE(r2 == 0);
                        continue;
                    }
                    bool reaches = oracles::orbit_reaches_a_form(q, r, 10, 50);
                    REQUIRE((cls == OrbitClass::A) == reaches);
                }
}

TEST_CASE("canonical_b_rep examples") {
    SUBCASE("already canonical") {
        auto rep = canonical_b_rep(std::vector<i64>{0, 1}, std::vector<i64>{1, 0});
        CHECK(rep.rep.q == std::vector<i64>{0, 1});
        CHECK(rep.rep.r == std::vector<i64>{1, 0});
        CHECK(rep.l1 == 1);
        CHECK(rep.l2 == 2);
        CHECK(rep.transform == Mat2i{});
        check_canonical_conditions(rep);
    }
    SUBCASE("general input") {
        auto rep = canonical_b_rep(std::vector<i64>{0, 3}, std::vector<i64>{2, 5});
        check_canonical_conditions(rep);
        auto [q2, r2] = apply(rep.transform, std::vector<i64>{0, 3}, std::vector<i64>{2, 5});
        CHECK(q2 == rep.rep.q);
        CHECK(r2 == rep.rep.r);
    }
    SUBCASE("standard basis pair") {
        auto rep = canonical_b_rep(std::vector<i64>{1, 0}, std::vector<i64>{0, 1});
        check_canonical_conditions(rep);
        auto [q2, r2] = apply(rep.transform, std::vector<i64>{1, 0}, std::vector<i64>{0, 1});
        CHECK(q2 == rep.rep.q);
        CHECK(r2 == rep.rep.r);
    }
    CHECK_THROWS_AS(canonical_b_rep(std::vector<i64>{0, 0}, std::vector<i64>{1, 0}),
                    std::domain_error);
}

TEST_CASE("canonical_b_rep over the [-3,3] grid: conditions, audit, determinism") {
    for (i64 q1 = -3; q1 <= 3; ++q1)
        for (i64 q2 = -3; q2 <= 3; ++q2)
            for (i64 r1 = -3; r1 <= 3; ++r1)
                for (i64 r2 = -3; r2 <= 3; ++r2) {
                    std::vector<i64> q{q1, q2}, r{r1, r2};
                    if (classify_orbit(q, r) != OrbitClass::B) continue;
                    auto rep = canonical_b_rep(q, r);
                    check_canonical_conditions(rep);
                    REQUIRE(rep.transform.det() == 1);
                    auto [qq, rr] = apply(rep.transform, q, r);
                    REQUIRE(qq == rep.rep.q);
                    REQUIRE(rr == rep.rep.r);
                    auto rep2 = canonical_b_rep(q, r);
                    REQUIRE(rep2.rep.q == rep.rep.q);
                    REQUIRE(rep2.rep.r == rep.rep.r);
                }
}

TEST_CASE("stabilizers of canonical representatives") {
    // A-form (0; r): lower unipotent matrices fix it
    std::vector<i64> zero{0, 0}, r{2, -3};
    for (i64 n = -5; n <= 5; ++n) {
        auto [q2, r2] = apply(Mat2i{1, 0, n, 1}, zero, r);
        CHECK(q2 == zero);
        CHECK(r2 == r);
    }
    // canonical B-reps: only the identity fixes them among small matrices
    auto rep = canonical_b_rep(std::vector<i64>{0, 3}, std::vector<i64>{2, 5});
    int fixers = 0;
    for (i64 a = -5; a <= 5; ++a)
        for (i64 b = -5; b <= 5; ++b)
            for (i64 c = -5; c <= 5; ++c)
                for (i64 d = -5; d <= 5; ++d) {
                    if (a * d - b * c != 1) continue;
                    auto [q2, r2] = apply(Mat2i{a, b, c, d}, rep.rep.q, rep.rep.r);
                    if (q2 == rep.rep.q && r2 == rep.rep.r) ++fixers;
                }
    CHECK(fixers == 1);
}
