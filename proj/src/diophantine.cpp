#include "oppq/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oppq/accum.hpp"
#include "oppq/dd.hpp"
#include "oppq/errors.hpp"

namespace oppq::dioph {

namespace {

constexpr double kPi = std::numbers::pi;

// visit every r in Z^k with |r|_inf = s
template <typename F>
void for_shell(int k, i64 s, F&& fn) {
    if (k == 1) {
        i64 a[1] = {-s};
        fn(std::span<const i64>(a, 1));
        a[0] = s;
        fn(std::span<const i64>(a, 1));
        return;
    }
    if (k == 2) {
        i64 a[2];
        for (i64 t = -s; t <= s; ++t) {
            a[0] = t; a[1] = -s; fn(std::span<const i64>(a, 2));
            a[0] = t; a[1] = s;  fn(std::span<const i64>(a, 2));
        }
        for (i64 t = -s + 1; t < s; ++t) {
            a[0] = -s; a[1] = t; fn(std::span<const i64>(a, 2));
            a[0] = s;  a[1] = t; fn(std::span<const i64>(a, 2));
        }
        return;
    }
    std::vector<i64> r(k, -s);
    for (;;) {
        i64 m = 0;
        for (i64 v : r) m = std::max<i64>(m, std::llabs(v));
        if (m == s) fn(std::span<const i64>(r));
        int i = 0;
        while (i < k && ++r[i] > s) r[i++] = -s;
        if (i == k) break;
    }
}

DD dot_dd(std::span<const i64> r, std::span<const double> xi) {
    DD acc{0, 0};
    for (size_t i = 0; i < r.size(); ++i) acc = dd_add(acc, two_prod(double(r[i]), xi[i]));
    return acc;
}

double norm2(std::span<const i64> r) {
    double s = 0;
    for (i64 v : r) s += double(v) * double(v);
    return std::sqrt(s);
}

}  // namespace

DiophQuality dioph_quality(DiophMode mode, std::span<const double> xi, double kappa,
                           double alpha, i64 bound) {
    if (xi.empty()) throw std::invalid_argument("dioph_quality: xi must be nonempty");
    if (bound < 1) throw std::invalid_argument("dioph_quality: bound must be >= 1");
    const int k = int(xi.size());

    DiophQuality out;
    out.mode = mode;
    out.kappa = kappa;
    out.alpha = alpha;
    out.bound = bound;
    out.min_quality = std::numeric_limits<double>::infinity();

    auto consider = [&](double quality, i64 j, std::span<const i64> r) {
        if (quality < out.min_quality) {
            out.min_quality = quality;
            out.witness_j = j;
            out.witness_r.assign(r.begin(), r.end());
        }
    };

    if (mode == DiophMode::KappaDioph) {
        std::vector<i64> m(k);
        for (i64 q = 1; q <= bound; ++q) {
            double nn = 0;
            for (int i = 0; i < k; ++i) {
                DD y = two_prod(double(q), xi[i]);
                double v = dd_value(y);
                m[i] = (i64)std::nearbyint(v);
                double d = dd_value(dd_add(y, double(-m[i])));
                nn += d * d;
            }
            consider(std::sqrt(nn) * std::pow(double(q), kappa), q, m);
        }
    } else {
        for (i64 s = 1; s <= bound; ++s) {
            for_shell(k, s, [&](std::span<const i64> r) {
                DD x = dd_frac(dot_dd(r, xi));
                double nk = std::pow(norm2(r), kappa);
                if (mode == DiophMode::KappaLFD) {
                    consider(dd_dist_to_int(x) * nk, 1, r);
                } else {
                    DD y{0, 0};
                    for (i64 j = 1; j * s <= bound; ++j) {
                        y = dd_add(y, x);
                        if (dd_value(y) >= 1.0) y = dd_add(y, -1.0);
                        double v = dd_value(y);
                        double eta = v <= 0.5 ? v : 1.0 - v;
                        consider(eta * std::pow(double(j), alpha) * nk, j, r);
                    }
                }
            });
        }
    }
    out.obstruction = out.min_quality == 0.0;
    return out;
}

MajorantResult delta_majorant(double beta, std::span<const double> xi, double T,
                              double tol, MajorantVariant variant) {
    const int k = int(xi.size());
    if (k < 1) throw std::invalid_argument("delta_majorant: xi must be nonempty");
    if (!(beta > k)) throw std::invalid_argument("delta_majorant: need beta > k");
    if (!(T > 0) || !(tol > 0)) throw std::invalid_argument("delta_majorant: need T, tol > 0");

    // Every inner term is <= 1/j^2: with eta = <j r.xi>,
    //   (1 + log+(T eta / j)) / (j^2 + T j eta) <= (1 + T eta/j) / (j^2 + T j eta) = 1/j^2,
    // so the r-tail beyond sup-norm radius S is at most
    //   (pi^2/6) * sum_{s>S} #shell(s) * s^{-beta} <= (pi^2/6) 2k 3^{k-1} S^{k-beta}/(beta-k).
    const double shell_const = (kPi * kPi / 6.0) * 2.0 * k * std::pow(3.0, k - 1) / (beta - k);
    auto rtail = [&](double S) { return shell_const * std::pow(S, double(k) - beta); };

    constexpr i64 kMaxS = 20000;
    constexpr double kWorkCap = 4e9;
    i64 S = 1;
    while (rtail(double(S)) > tol / 2 && S < kMaxS) ++S;
    if (rtail(double(S)) > tol / 2)
        throw budget_error("delta_majorant: r-cut cap reached", rtail(double(S)));

    // cheap overestimate of the inner work before allocating anything:
    // sqrt(w_r) <= s^{-beta/2} on shell s
    {
        double est = 0;
        for (i64 s = 1; s <= S; ++s)
            est += 2.0 * k * std::pow(2.0 * s + 1.0, k - 1) * std::pow(double(s), -beta / 2);
        if (2.0 * est * est / tol > kWorkCap)
            throw budget_error("delta_majorant: inner work cap exceeded", tol);
    }

    // first pass: weights |r|^-beta and the allocation constant
    struct REntry {
        DD x;        // frac(r.xi)
        double w;    // |r|^-beta
        i64 J;
    };
    std::vector<REntry> entries;
    double sum_sqrt_w = 0;
    for (i64 s = 1; s <= S; ++s)
        for_shell(k, s, [&](std::span<const i64> r) {
            REntry e;
            e.x = dd_frac(dot_dd(r, xi));
            e.w = std::pow(norm2(r), -beta);
            e.J = 0;
            entries.push_back(e);
            sum_sqrt_w += std::sqrt(e.w);
        });

    // inner tail sum_{j>J_r} <= w_r / J_r; J_r ~ sqrt(w_r) minimizes total work
    const double lambda = 2.0 * sum_sqrt_w / tol;
    if (lambda * sum_sqrt_w > kWorkCap)
        throw budget_error("delta_majorant: inner work cap exceeded", tol);

    const bool full = variant == MajorantVariant::Full;
    Kahan total;
    double jtail = 0;
    i64 jcut_max = 0;
    for (auto& e : entries) {
        e.J = std::max<i64>(1, (i64)std::ceil(std::sqrt(e.w) * lambda));
        jcut_max = std::max(jcut_max, e.J);
        Kahan inner;
        DD y{0, 0};
        for (i64 j = 1; j <= e.J; ++j) {
            y = dd_add(y, e.x);
            if (dd_value(y) >= 1.0) y = dd_add(y, -1.0);
            double v = dd_value(y);
            double eta = v <= 0.5 ? v : 1.0 - v;
            double jd = double(j);
            double den = jd * jd + T * jd * eta;
            double num = 1.0;
            if (full) {
                double arg = T * eta / jd;
                if (arg > 1.0) num += std::log(arg);
            }
            inner.add(num / den);
        }
        total.add(e.w * inner.value());
        jtail += e.w / double(e.J);
    }

    MajorantResult res;
    res.value = total.value();
    res.tail_bound = rtail(double(S)) + jtail;
    res.R_cut = int(S);
    res.J_cut = jcut_max;
    return res;
}

CFSumResult cf_sum(double eta, double T, double kappa, double c) {
    if (!(T > 0)) throw std::invalid_argument("cf_sum: T must be positive");
    CFSumResult out;
    out.bound = std::pow(c * T, -2.0 / (1.0 + kappa)) * std::pow(std::log(2.0 + T), 2);

    // tail sum_{j>J} 1/(j^2 + ...) <= 1/J
    i64 J = (i64)std::llround(std::clamp(1e3 / std::max(out.bound, 1e-300), 1e6, 1e8));
    DD x = dd_frac(DD{eta, 0});
    DD y{0, 0};
    Kahan acc;
    for (i64 j = 1; j <= J; ++j) {
        y = dd_add(y, x);
        if (dd_value(y) >= 1.0) y = dd_add(y, -1.0);
        double v = dd_value(y);
        double dist = v <= 0.5 ? v : 1.0 - v;
        double jd = double(j);
        acc.add(1.0 / (jd * jd + T * jd * dist));
        if (out.hypothesis_ok && dist < c * std::pow(jd, -kappa)) {
            out.hypothesis_ok = false;
            out.violating_j = j;
        }
    }
    out.lhs = acc.value();
    out.tail = 1.0 / double(J);
    out.ratio = out.lhs / out.bound;
    return out;
}

ShiftedLatticeSum shifted_lattice_sum(std::span<const double> alpha, double D, double T,
                                      double A, double kappa, double c) {
    const int k = int(alpha.size());
    if (k < 1) throw std::invalid_argument("shifted_lattice_sum: alpha must be nonempty");
    if (!(A > k)) throw std::invalid_argument("shifted_lattice_sum: need A > k");
    if (!(D >= 1) || !(T >= 1)) throw std::invalid_argument("shifted_lattice_sum: need D, T >= 1");

    // per-d window: terms beyond (1 + T rho)^{-A} = 1e-15 are dropped;
    // enumeration radius further capped at 300
    const double rho = std::min((std::pow(1e15, 1.0 / A) - 1.0) / T, 300.0);

    Kahan acc;
    std::vector<i64> lo(k), hi(k);
    for (i64 d = 1; d <= (i64)D; ++d) {
        for (int i = 0; i < k; ++i) {
            lo[i] = (i64)std::ceil(-d * alpha[i] - rho);
            hi[i] = (i64)std::floor(-d * alpha[i] + rho);
        }
        std::vector<i64> m(lo);
        for (;;) {
            double nn = 0;
            for (int i = 0; i < k; ++i) {
                double t = d * alpha[i] + double(m[i]);
                nn += t * t;
            }
            double term = std::pow(1.0 + T * std::sqrt(nn), -A);
            if (term > 1e-15) acc.add(term);
            int i = 0;
            while (i < k && ++m[i] > hi[i]) m[i] = lo[i], ++i;
            if (i == k) break;
        }
    }

    ShiftedLatticeSum out;
    out.value = acc.value();
    const double cT = c * T;
    if (std::pow(D, kappa + 1.0 / A) <= cT) {
        out.branch = 1;
        out.piecewise_bound = std::pow(D, A * kappa + 1.0) * std::pow(cT, -A);
    } else if (std::pow(D, kappa) <= cT) {
        out.branch = 2;
        out.piecewise_bound = 1.0;
    } else {
        out.branch = 3;
        out.piecewise_bound = D * std::pow(cT, -1.0 / kappa);
    }
    return out;
}

double decay_fit(std::span<const std::pair<double, double>> pairs) {
    if (pairs.size() < 4) throw std::invalid_argument("decay_fit: need at least 4 points");
    double prev_t = -std::numeric_limits<double>::infinity();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [t, v] : pairs) {
        if (!(t > prev_t)) throw std::invalid_argument("decay_fit: T must be strictly increasing");
        if (!(v > 0)) throw std::invalid_argument("decay_fit: values must be positive");
        prev_t = t;
        double x = std::log(t), y = std::log(v);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double n = double(pairs.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oppq::dioph
