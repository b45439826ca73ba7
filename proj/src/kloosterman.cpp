#include "oppq/kloosterman.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "oppq/numtheory.hpp"

namespace oppq::kloosterman {

namespace nt = oppq::numtheory;

namespace {

i64 mod(i64 a, i64 m) { return ((a % m) + m) % m; }

cplx e_of(double x) {
    double t = 2.0 * std::numbers::pi * x;
    return {std::cos(t), std::sin(t)};
}

}  // namespace

USet u_set(i64 c, i64 N, i64 a0, i64 b0, i64 d0) {
    if (c < 1 || N < 1) throw std::invalid_argument("u_set: need c >= 1, N >= 1");
    if (mod(a0 * d0 - b0 * c, N) != mod(1, N))
        throw std::invalid_argument("u_set: residue data violates a0 d0 - b0 c = 1 mod N");

    USet u;
    u.c = c;
    u.N = N;
    const i64 cN = c * N;
    const i64 s = mod(1 + b0 * c, cN);
    // d runs over the c residues = d0 mod N inside Z/cNZ; for each, solve
    // a = a0 + N x from (a0 + N x) d = s (mod cN), i.e. x d = (s - a0 d)/N (mod c).
    for (i64 t = 0; t < c; ++t) {
        i64 d = mod(d0 + N * t, cN);
        i64 rhs = mod(s - a0 * d, cN);
        // rhs is divisible by N: both sides are = a0 d0 - (a0 d0 - 1) - ... mod N
        i64 r = rhs / N;
        i64 g = std::gcd(mod(d, c) == 0 ? c : mod(d, c), c);
        if (r % g) continue;
        i64 cg = c / g;
        i64 x0 = mod((r / g) * nt::mod_inverse(mod(d, c) / g, cg), cg);
        for (i64 j = 0; j < g; ++j) {
            i64 x = x0 + j * cg;
            u.pairs.emplace_back(mod(a0 + N * x, cN), d);
        }
    }
    std::sort(u.pairs.begin(), u.pairs.end(),
              [](auto& p, auto& q) { return p.second != q.second ? p.second < q.second : p.first < q.first; });
    return u;
}

cplx kloosterman_sum(const USet& u, i64 m, i64 n) {
    const i64 cN = u.c * u.N;
    cplx s = 0;
    for (auto [a, d] : u.pairs) s += e_of(double(mod(m * d + n * a, cN)) / double(cN));
    return s;
}

cplx kloosterman_sum(const KloostermanQuery& q) {
    if (q.c < 1) throw std::invalid_argument("kloosterman_sum: c must be positive");
    if (q.R.det() != 1) throw std::invalid_argument("kloosterman_sum: R must have det 1");
    if (mod(q.R.c - q.c, q.N) != 0)
        throw std::invalid_argument("kloosterman_sum: lower-left of R must be c mod N");
    return kloosterman_sum(u_set(q.c, q.N, q.R.a, q.R.b, q.R.d), q.m, q.n);
}

sl2::Mat2i sl2_lift(i64 a, i64 b, i64 c, i64 d, i64 q) {
    if (q < 1) throw std::invalid_argument("sl2_lift: modulus must be >= 1");
    if (q == 1) return {1, 0, 0, 1};
    a = mod(a, q); b = mod(b, q); c = mod(c, q); d = mod(d, q);
    if (mod(a * d - b * c, q) != 1)
        throw std::invalid_argument("sl2_lift: det must be 1 mod q");

    // coprime bottom row congruent to (c, d) mod q
    i64 cc = c == 0 ? q : c;
    i64 dd = d;
    while (std::gcd(cc, dd) != 1) dd += q;

    // top row from Bezout, then shifted by x*(cc, dd) to hit (a, b) mod q
    auto e = nt::ext_gcd(dd, cc);  // dd*x + cc*y = 1
    i64 a1 = e.x, b1 = -e.y;       // a1*dd - b1*cc = 1

    // solve x*cc = a - a1, x*dd = b - b1 (mod q), prime power by prime power
    i64 x = 0, mcur = 1;
    for (auto [p, epow] : nt::factorize(q).prime_powers) {
        i64 pe = 1;
        for (int i = 0; i < epow; ++i) pe *= p;
        i64 xe;
        if (cc % p != 0)
            xe = mod((a - a1) * nt::mod_inverse(cc, pe), pe);
        else
            xe = mod((b - b1) * nt::mod_inverse(dd, pe), pe);
        // CRT combine x (mod mcur) with xe (mod pe)
        i64 inv = nt::mod_inverse(mcur % pe, pe);
        x = x + mcur * mod((xe - x) * inv, pe);
        mcur *= pe;
    }
    sl2::Mat2i out{a1 + x * cc, b1 + x * dd, cc, dd};
    if (out.det() != 1) throw std::logic_error("sl2_lift: construction failed");
    return out;
}

MultSplit multiplicativity_check(const KloostermanQuery& q, i64 M1, i64 M2) {
    const i64 cN = q.c * q.N;
    if (M1 < 1 || M2 < 1 || M1 * M2 != cN || std::gcd(M1, M2) != 1)
        throw std::invalid_argument("multiplicativity_check: need coprime M1*M2 = cN");
    const i64 K1 = std::gcd(q.N, M1), K2 = std::gcd(q.N, M2);
    const i64 K3 = std::gcd(q.c, M1), K4 = std::gcd(q.c, M2);
    const i64 M2bar = M1 == 1 ? 0 : nt::mod_inverse(M2, M1);
    const i64 M1bar = M2 == 1 ? 0 : nt::mod_inverse(M1, M2);

    const i64 a0 = q.R.a, b0 = q.R.b, d0 = q.R.d;
    MultSplit out;
    out.factor1 = {q.m, M2bar * M2bar % M1 * q.n, K3,
                   sl2_lift(M2 * a0, K4 * b0, K3, M2bar * d0, K1), K1};
    out.factor2 = {q.m, M1bar * M1bar % M2 * q.n, K4,
                   sl2_lift(M1 * a0, K3 * b0, K4, M1bar * d0, K2), K2};
    out.lhs = kloosterman_sum(q);
    out.rhs = kloosterman_sum(out.factor1) * kloosterman_sum(out.factor2);
    out.err = std::abs(out.lhs - out.rhs);
    return out;
}

cplx n0_closed_form(i64 m, i64 c, const sl2::Mat2i& R, i64 N) {
    auto [c1, c2] = nt::smooth_split(c, N);
    const i64 g = std::gcd(c, std::llabs(m));  // gcd(c, 0) = c
    if (m % c1 != 0) return 0.0;
    auto cg = nt::arithmetic_functions(c / g);
    if (cg.mu == 0) return 0.0;
    const double mag =
        double(cg.mu) * double(nt::arithmetic_functions(c2).phi) * double(c1) / double(cg.phi);
    const i64 c2bar = nt::mod_inverse(c2 % N, N);
    return mag * e_of(double(mod(m * c2bar % (c1 * N) * R.d, c1 * N)) / double(c1 * N));
}

WeilAudit weil_audit(i64 c_max, i64 N, const sl2::Mat2i& R,
                     std::span<const std::pair<i64, i64>> mn_samples) {
    WeilAudit out;
    for (i64 c = 1; c <= c_max; ++c) {
        if (mod(c - R.c, N) != 0) continue;
        USet u = u_set(c, N, R.a, R.b, R.d);
        const double sig = double(nt::arithmetic_functions(c).sigma);
        for (auto [m, n] : mn_samples) {
            i64 g = std::gcd(std::gcd(std::llabs(m), std::llabs(n)), c);
            double ratio = std::abs(kloosterman_sum(u, m, n)) /
                           (sig * std::sqrt(double(g)) * std::sqrt(double(c)));
            if (ratio > out.max_ratio + 1e-15) {
                out.max_ratio = ratio;
                out.argmax = {m, n, c, R, N};
            }
        }
    }
    return out;
}

BAlphaSum b_alpha_sum(double alpha, i64 X, i64 N) {
    if (X < 1) throw std::invalid_argument("b_alpha_sum: X must be >= 1");
    BAlphaSum out;
    out.value = 0;
    for (i64 c = 1; c <= X; ++c) {
        auto [c1, c2] = nt::smooth_split(c, N);
        out.value += double(c1 * nt::arithmetic_functions(c2).phi) * e_of(c * alpha);
    }
    out.majorant = 0;
    for (i64 j = 1; j <= X; ++j) {
        double jd = double(j);
        double dist = nt::nearest_int_dist(jd * alpha);
        double m = 1.0 / (jd * jd);
        if (dist > 0) m = std::min(m, 1.0 / (double(X) * jd * dist));
        out.majorant += m;
    }
    out.majorant *= double(X) * double(X);
    return out;
}

std::vector<sl2::Mat2i> residue_classes(i64 N) {
    if (N < 1) throw std::invalid_argument("residue_classes: N must be >= 1");
    std::vector<sl2::Mat2i> out;
    if (N == 1) {
        out.push_back({1, 0, 0, 1});
        return out;
    }
    for (i64 a = 0; a < N; ++a)
        for (i64 b = 0; b < N; ++b)
            for (i64 c = 0; c < N; ++c)
                for (i64 d = 0; d < N; ++d)
                    if (mod(a * d - b * c, N) == 1) out.push_back(sl2_lift(a, b, c, d, N));
    return out;
}

}  // namespace oppq::kloosterman
