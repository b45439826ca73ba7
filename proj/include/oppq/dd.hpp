#pragma once

#include <cmath>
#include <cstdint>

namespace oppq {

// Minimal double-double arithmetic (~106 significand bits), used where a
// product j*x mod 1 must stay trustworthy for j up to ~1e8.
struct DD {
    double hi = 0, lo = 0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_norm(double hi, double lo) {
    DD s = two_sum(hi, lo);
    return s;
}

inline DD dd_add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    return dd_norm(s.hi, s.lo + a.lo);
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    return dd_norm(s.hi, s.lo + a.lo + b.lo);
}

inline DD dd_mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    return dd_norm(p.hi, p.lo + a.lo * b);
}

inline double dd_value(DD a) { return a.hi + a.lo; }

// reduce into [0,1); exact when |a| < 2^52 (integer subtraction is exact)
inline DD dd_frac(DD a) {
    double f = std::floor(a.hi);
    DD r = dd_norm(a.hi - f, a.lo);
    if (r.hi < 0) r = dd_add(r, 1.0);
    if (r.hi >= 1.0) r = dd_add(r, -1.0);
    return r;
}

// distance of a (taken mod 1) to the nearest integer
inline double dd_dist_to_int(DD a) {
    DD f = dd_frac(a);
    double y = dd_value(f);
    return y <= 0.5 ? y : 1.0 - y;
}

}  // namespace oppq
