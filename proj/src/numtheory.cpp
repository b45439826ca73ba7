#include "oppq/numtheory.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oppq::numtheory {

namespace {
// increments cycling through the gaps of the mod-30 wheel after 2,3,5
constexpr int kWheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
}  // namespace

Factorization factorize(i64 n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    if (n > kFactorCap) throw std::range_error("factorize: n exceeds the 1e7 cap");
    Factorization f;
    auto strip = [&](i64 p) {
        if (n % p) return;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.prime_powers.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    strip(5);
    i64 p = 7;
    int w = 0;
    while (p * p <= n) {
        strip(p);
        p += kWheel[w];
        w = (w + 1) & 7;
    }
    if (n > 1) f.prime_powers.emplace_back(n, 1);
    return f;
}

ArithmeticFunctions arithmetic_functions(i64 n) {
    ArithmeticFunctions r;
    r.fact = factorize(n);
    for (auto [p, e] : r.fact.prime_powers) {
        i64 pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        r.phi *= pe / p * (p - 1);
        r.mu = (e > 1) ? 0 : -r.mu;
        r.sigma *= e + 1;
        // sigma1 *= (p^(e+1)-1)/(p-1), checked in 128-bit
        __int128 geom = (__int128)pe * p - 1;
        geom /= p - 1;
        __int128 s1 = (__int128)r.sigma1 * geom;
        if (s1 > INT64_MAX) throw std::range_error("arithmetic_functions: sigma1 overflow");
        r.sigma1 = (i64)s1;
    }
    return r;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

ExtGcd ext_gcd(i64 a, i64 b) {
    i64 old_r = a, r = b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        old_r -= q * r; std::swap(old_r, r);
        old_s -= q * s; std::swap(old_s, s);
        old_t -= q * t; std::swap(old_t, t);
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

i64 mod_inverse(i64 a, i64 m) {
    if (m < 1) throw std::invalid_argument("mod_inverse: m must be >= 1");
    if (m == 1) return 0;
    auto [g, x, y] = ext_gcd(((a % m) + m) % m, m);
    (void)y;
    if (g != 1) throw std::domain_error("mod_inverse: no inverse, gcd != 1");
    return ((x % m) + m) % m;
}

std::pair<i64, i64> smooth_split(i64 c, i64 N) {
    if (c < 1 || N < 1) throw std::invalid_argument("smooth_split: need c, N >= 1");
    i64 c1 = 1, c2 = c;
    // each pass strips gcd(c2, N); primes of the stripped part divide N
    for (;;) {
        i64 g = std::gcd(c2, N);
        if (g == 1) break;
        c2 /= g;
        c1 *= g;
    }
    return {c1, c2};
}

double nearest_int_dist(double x) {
    // round-half-even keeps representable midpoints exact
    return std::fabs(x - std::nearbyint(x));
}

}  // namespace oppq::numtheory
