#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace oppq::numtheory {

using i64 = std::int64_t;

// Inputs above this are rejected by factorize(); trial division with a
// 2-3-5 wheel is exact and fast up to here.
inline constexpr i64 kFactorCap = 10'000'000;

// prime_powers sorted by strictly increasing prime; product restores n.
struct Factorization {
    std::vector<std::pair<i64, int>> prime_powers;

    i64 value() const {
        i64 v = 1;
        for (auto [p, e] : prime_powers)
            for (int i = 0; i < e; ++i) v *= p;
        return v;
    }
};

struct ArithmeticFunctions {
    i64 phi = 1;     // Euler totient
    int mu = 1;      // Moebius
    i64 sigma = 1;   // number of divisors
    i64 sigma1 = 1;  // sum of divisors
    Factorization fact;
};

Factorization factorize(i64 n);
ArithmeticFunctions arithmetic_functions(i64 n);

i64 gcd(i64 a, i64 b);

// g = gcd(a,b) >= 0 together with x, y solving a*x + b*y = g.
struct ExtGcd {
    i64 g, x, y;
};
ExtGcd ext_gcd(i64 a, i64 b);

// inverse of a mod m in [0, m); throws std::domain_error if gcd(a,m) != 1.
i64 mod_inverse(i64 a, i64 m);

// Unique split c = c1*c2 with rad(c1) | N and gcd(c2, N) = 1.
std::pair<i64, i64> smooth_split(i64 c, i64 N);

// distance to the nearest integer, in [0, 1/2]
double nearest_int_dist(double x);

}  // namespace oppq::numtheory
