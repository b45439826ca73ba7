#include <doctest.h>

#include <cmath>

#include "oppq/cf.hpp"
#include "oppq/numtheory.hpp"
#include "oracles.hpp"

namespace nt = oppq::numtheory;

TEST_CASE("arithmetic functions at fixed points") {
    auto a1 = nt::arithmetic_functions(1);
    CHECK(a1.phi == 1);
    CHECK(a1.mu == 1);
    CHECK(a1.sigma == 1);
    CHECK(a1.sigma1 == 1);
    CHECK(a1.fact.prime_powers.empty());

    auto a12 = nt::arithmetic_functions(12);
    CHECK(a12.phi == 4);
    CHECK(a12.mu == 0);
    CHECK(a12.sigma == 6);
    CHECK(a12.sigma1 == 28);
    CHECK(a12.fact.prime_powers == std::vector<std::pair<std::int64_t, int>>{{2, 2}, {3, 1}});

    auto a30 = nt::arithmetic_functions(30);
    CHECK(a30.phi == 8);
    CHECK(a30.mu == -1);
    CHECK(a30.sigma == 8);
    CHECK(a30.sigma1 == 72);
}

TEST_CASE("arithmetic functions vs divisor enumeration up to 1e4") {
    for (std::int64_t n = 1; n <= 10000; ++n) {
        auto a = nt::arithmetic_functions(n);
        auto b = oracles::brute_arith(n);
        REQUIRE(a.phi == b.phi);
        REQUIRE(a.mu == b.mu);
        REQUIRE(a.sigma == b.sigma);
        REQUIRE(a.sigma1 == b.sigma1);
        REQUIRE(a.fact.value() == n);
    }
}

TEST_CASE("factorize rejects out-of-range input") {
    CHECK_THROWS_AS(nt::factorize(0), std::invalid_argument);
    CHECK_THROWS_AS(nt::factorize(nt::kFactorCap + 1), std::range_error);
}

TEST_CASE("mod_inverse") {
    CHECK(nt::mod_inverse(1, 7) == 1);
    CHECK(nt::mod_inverse(3, 10) == 7);
    CHECK_THROWS_AS(nt::mod_inverse(2, 4), std::domain_error);
    for (std::int64_t m = 1; m <= 50; ++m)
        for (std::int64_t a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) continue;
            CHECK(a * nt::mod_inverse(a, m) % m == 1 % m);
        }
}

TEST_CASE("smooth_split examples and round trip") {
    CHECK(nt::smooth_split(1, 6) == std::pair<std::int64_t, std::int64_t>{1, 1});
    CHECK(nt::smooth_split(12, 2) == std::pair<std::int64_t, std::int64_t>{4, 3});
    CHECK(nt::smooth_split(35, 6) == std::pair<std::int64_t, std::int64_t>{1, 35});
    for (std::int64_t N : {1, 2, 3, 4, 6, 12})
        for (std::int64_t c = 1; c <= 10000; ++c) {
            auto [c1, c2] = nt::smooth_split(c, N);
            REQUIRE(c1 * c2 == c);
            REQUIRE(std::gcd(c2, N) == 1);
            // rad(c1) | N: every prime of c1 divides N
            std::int64_t x = c1;
            for (std::int64_t p = 2; p * p <= x; ++p)
                while (x % p == 0) {
                    REQUIRE(N % p == 0);
                    x /= p;
                }
            if (x > 1) REQUIRE(N % x == 0);
        }
}

TEST_CASE("nearest_int_dist") {
    CHECK(nt::nearest_int_dist(0.5) == 0.5);
    CHECK(nt::nearest_int_dist(2.25) == 0.25);
    CHECK(nt::nearest_int_dist(-0.6) == doctest::Approx(0.4).epsilon(1e-14));
    for (int i = -40; i <= 40; ++i) {
        double x = 0.137 * i;
        for (int n = -3; n <= 3; ++n)
            CHECK(nt::nearest_int_dist(x + n) == doctest::Approx(nt::nearest_int_dist(x)).epsilon(1e-12));
    }
}

TEST_CASE("continued fraction golden ratio") {
    auto cf = nt::continued_fraction(nt::ExtReal::golden_ratio(), 6);
    CHECK(cf.quotients == std::vector<std::int64_t>{1, 1, 1, 1, 1, 1});
    CHECK(cf.convergents.back() == std::pair<std::int64_t, std::int64_t>{13, 8});
    CHECK_FALSE(cf.exact);
}

TEST_CASE("continued fraction of exact rational terminates") {
    auto cf = nt::continued_fraction(0.5, 3);
    CHECK(cf.quotients == std::vector<std::int64_t>{0, 2});
    CHECK(cf.exact);
}

TEST_CASE("continued fraction sqrt2") {
    auto cf = nt::continued_fraction(nt::ExtReal::sqrt_of(2), 4);
    CHECK(cf.quotients == std::vector<std::int64_t>{1, 2, 2, 2});
    CHECK(cf.convergents.back() == std::pair<std::int64_t, std::int64_t>{17, 12});
}

TEST_CASE("continued fraction invariants to depth 40") {
    const std::int64_t fib[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
    for (int which = 0; which < 3; ++which) {
        nt::ExtReal x = which == 0   ? nt::ExtReal::sqrt_of(2)
                        : which == 1 ? nt::ExtReal::sqrt_of(3)
                                     : nt::ExtReal::golden_ratio();
        auto cf = nt::continued_fraction(x, 40);
        REQUIRE(cf.quotients.size() == 40);
        double xv = cf.x;
        for (std::size_t i = 1; i < cf.convergents.size(); ++i) {
            auto [pk, qk] = cf.convergents[i];
            auto [pp, qq] = cf.convergents[i - 1];
            REQUIRE(std::llabs(pk * qq - pp * qk) == 1);
            // q0 = 1 <= q1 < q2 < ...
            if (i >= 2) REQUIRE(qk > qq);
            else REQUIRE(qk >= qq);
        }
        // q_k grows at least like Fibonacci
        for (std::size_t i = 0; i < std::size(fib); ++i)
            REQUIRE(cf.convergents[i].second >= fib[i]);
        // approximation quality |x - p/q| < 1/(q_k q_{k+1})
        for (std::size_t i = 0; i + 1 < 12; ++i) {
            auto [pk, qk] = cf.convergents[i];
            auto [pn, qn] = cf.convergents[i + 1];
            REQUIRE(std::fabs(xv - double(pk) / double(qk)) < 1.0 / (double(qk) * double(qn)));
        }
    }
}

TEST_CASE("continued fraction flags precision exhaustion on a plain double") {
    // double(sqrt 2) is a rational whose expansion leaves sqrt2's around the
    // precision wall; the guard must fire rather than emit junk quotients
    try {
        auto cf = nt::continued_fraction(std::sqrt(2.0), 60);
        // termination as an exact rational is the only other legal outcome
        CHECK(cf.exact);
    } catch (const oppq::precision_error& e) {
        CHECK(e.last_trusted() >= 25);
    }
}

TEST_CASE("continued fraction depth cap") {
    CHECK_THROWS_AS(nt::continued_fraction(0.5, 65), std::invalid_argument);
}
