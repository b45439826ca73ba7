#include "oppq/oppenheim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oppq/accum.hpp"
#include "oppq/errors.hpp"
#include "oppq/fenwick.hpp"
#include "oppq/quad.hpp"

namespace oppq::oppenheim {

namespace {

constexpr double kPi = std::numbers::pi;

cplx e_of(double x) {
    double t = 2 * kPi * x;
    return {std::cos(t), std::sin(t)};
}

// m in Z^2 with |m| < T; s is the annulus key |m - xi|^2, n = |m|^2
struct DiskPoint {
    double s;
    std::uint32_t n;
};

std::vector<DiskPoint> disk_points(const ShiftVector& shift, double T) {
    std::vector<DiskPoint> pts;
    pts.reserve(std::size_t(kPi * T * T) + 64);
    const double Tsq = T * T;
    const long long mx_hi = (long long)std::floor(T);
    for (long long mx = -mx_hi; mx <= mx_hi; ++mx) {
        double rem = Tsq - double(mx) * double(mx);
        if (rem <= 0) continue;
        long long my_hi = (long long)std::floor(std::sqrt(rem));
        for (long long my = -my_hi; my <= my_hi; ++my) {
            double nn = double(mx * mx + my * my);
            if (!(nn < Tsq)) continue;
            double da = double(mx) - shift.alpha, db = double(my) - shift.beta;
            pts.push_back({da * da + db * db, std::uint32_t(mx * mx + my * my)});
        }
    }
    return pts;
}

double count_window_brute(const ShiftVector& shift, const CountQuery& q) {
    if (q.T > 200) throw budget_error("count_window: brute method capped at T = 200", q.T);
    auto pts = disk_points(shift, q.T);
    const double Tsq = q.T * q.T;
    std::uint64_t count = 0;
    for (const auto& p1 : pts)
        for (const auto& p2 : pts) {
            double qq = p1.s - p2.s;
            if (q.a < qq && qq < q.b && double(p1.n) + double(p2.n) < Tsq) ++count;
        }
    // remove the diagonal m2 = m1
    for (const auto& p : pts)
        if (q.a < 0.0 && 0.0 < q.b && 2.0 * double(p.n) < Tsq) --count;
    return double(count) / Tsq;
}

double count_window_fenwick(const ShiftVector& shift, const CountQuery& q) {
    auto pts = disk_points(shift, q.T);
    std::sort(pts.begin(), pts.end(), [](const DiskPoint& x, const DiskPoint& y) {
        return x.s != y.s ? x.s < y.s : x.n < y.n;
    });
    const double Tsq = q.T * q.T;

    std::vector<std::uint32_t> nv(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) nv[i] = pts[i].n;
    std::sort(nv.begin(), nv.end());
    nv.erase(std::unique(nv.begin(), nv.end()), nv.end());
    std::vector<std::uint32_t> rank_table(nv.back() + 1);
    for (std::size_t r = 0, n = 0; n < rank_table.size(); ++n) {
        while (r < nv.size() && nv[r] < n) ++r;
        rank_table[n] = std::uint32_t(r);
    }
    // ranks with n + n_i < T^2, as a count (monotone exact predicate)
    auto rank_limit = [&](std::uint32_t ni) {
        std::size_t lo = 0, hi = nv.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (double(nv[mid]) + double(ni) < Tsq) lo = mid + 1; else hi = mid;
        }
        return lo;
    };

    FenwickTree fw(nv.size());
    std::uint64_t count = 0;
    std::size_t L = 0, R = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double si = pts[i].s;
        while (R < pts.size() && si - pts[R].s > q.a) fw.add(rank_table[pts[R].n]), ++R;
        while (L < R && si - pts[L].s >= q.b) fw.remove(rank_table[pts[L].n]), ++L;
        count += fw.prefix(rank_limit(pts[i].n));
        if (q.a < 0.0 && 0.0 < q.b && 2.0 * double(pts[i].n) < Tsq) --count;
    }
    return double(count) / Tsq;
}

}  // namespace

double q_eval(const std::array<double, 4>& x, const ShiftVector& shift) {
    double a1 = x[0] - shift.alpha, b1 = x[1] - shift.beta;
    double a2 = x[2] - shift.alpha, b2 = x[3] - shift.beta;
    return a1 * a1 + b1 * b1 - a2 * a2 - b2 * b2;
}

double lambda_f(const std::function<double(double, double, double, double)>& f,
                double quad_tol, double r_max) {
    if (!(quad_tol > 0) || !(r_max > 0)) throw std::invalid_argument("lambda_f: bad arguments");
    auto angular = [&](double r) {
        return quad::periodic_trapezoid(
            [&](double z1) {
                return quad::periodic_trapezoid(
                    [&](double z2) {
                        return f(r * std::cos(z1), r * std::sin(z1), r * std::cos(z2),
                                 r * std::sin(z2));
                    },
                    1e-12);
            },
            1e-12);
    };
    return 0.5 * quad::gk_adaptive([&](double r) { return angular(r) * r; }, 0, r_max, quad_tol);
}

double lambda_fg(const std::function<double(double, double)>& f,
                 const std::function<double(double, double)>& g, double quad_tol,
                 double r_max) {
    if (!(quad_tol > 0) || !(r_max > 0)) throw std::invalid_argument("lambda_fg: bad arguments");
    auto ang = [&](const std::function<double(double, double)>& t, double r) {
        return quad::periodic_trapezoid(
            [&](double z) { return t(r * std::cos(z), r * std::sin(z)); }, 1e-12);
    };
    return quad::gk_adaptive([&](double r) { return ang(f, r) * ang(g, r) * r; }, 0, r_max,
                             quad_tol);
}

SpectrumList spectrum(const ShiftVector& shift, double Lambda, std::size_t point_cap) {
    if (!(Lambda > 0)) throw std::invalid_argument("spectrum: Lambda must be positive");
    if (kPi * Lambda > double(point_cap) * 1.05 + 1e4)
        throw budget_error("spectrum: expected point count exceeds cap", kPi * Lambda);
    SpectrumList out;
    out.Lambda = Lambda;
    out.shift = shift;
    const double rad = std::sqrt(Lambda);
    const long long m_lo = (long long)std::ceil(shift.alpha - rad);
    const long long m_hi = (long long)std::floor(shift.alpha + rad);
    for (long long m = m_lo; m <= m_hi; ++m) {
        double da = double(m) - shift.alpha;
        double rem = Lambda - da * da;
        if (rem <= 0) continue;
        double w = std::sqrt(rem);
        long long n_lo = (long long)std::ceil(shift.beta - w);
        long long n_hi = (long long)std::floor(shift.beta + w);
        for (long long n = n_lo; n <= n_hi; ++n) {
            double db = double(n) - shift.beta;
            double val = da * da + db * db;
            if (val < Lambda) out.values.push_back(val);
        }
    }
    std::sort(out.values.begin(), out.values.end());
    return out;
}

double count_window(const ShiftVector& shift, const CountQuery& q, CountMethod method) {
    if (!(q.a < q.b)) throw std::invalid_argument("count_window: need a < b");
    if (!(q.T >= 1)) throw std::invalid_argument("count_window: need T >= 1");
    return method == CountMethod::Brute ? count_window_brute(shift, q)
                                        : count_window_fenwick(shift, q);
}

double count_smooth(const std::function<double(double, double, double, double)>& f,
                    const std::function<double(double)>& g, const ShiftVector& shift,
                    double T, double r_max) {
    if (!(T >= 1)) throw std::invalid_argument("count_smooth: need T >= 1");
    const double R = T * r_max;
    if (R > 300) throw budget_error("count_smooth: enumeration radius capped at 300", R);

    // lattice points of the radius-R disk, sorted by |m|^2 so that the
    // 4-ball constraint n1 + n2 <= R^2 is a prefix
    struct Pt {
        long long x, y;
        double n;
    };
    std::vector<Pt> pts;
    const long long hi = (long long)std::floor(R);
    for (long long x = -hi; x <= hi; ++x)
        for (long long y = -hi; y <= hi; ++y) {
            double nn = double(x * x + y * y);
            if (nn <= R * R) pts.push_back({x, y, nn});
        }
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.n < b.n; });

    Kahan acc;
    const double Tsq = T * T;
    for (const auto& p1 : pts) {
        double budget = R * R - p1.n;
        double s1 = (double(p1.x) - shift.alpha) * (double(p1.x) - shift.alpha) +
                    (double(p1.y) - shift.beta) * (double(p1.y) - shift.beta);
        for (const auto& p2 : pts) {
            if (p2.n > budget) break;
            if (p1.x == p2.x && p1.y == p2.y) continue;
            double fv = f(double(p1.x) / T, double(p1.y) / T, double(p2.x) / T, double(p2.y) / T);
            if (std::fabs(fv) < 1e-15) continue;
            double s2 = (double(p2.x) - shift.alpha) * (double(p2.x) - shift.alpha) +
                        (double(p2.y) - shift.beta) * (double(p2.y) - shift.beta);
            acc.add(fv * g(s1 - s2));
        }
    }
    return acc.value() / Tsq;
}

double pair_correlation(const ShiftVector& shift, double a, double b, double Lambda) {
    if (!(a < b)) throw std::invalid_argument("pair_correlation: need a < b");
    if (!(Lambda >= 1)) throw std::invalid_argument("pair_correlation: need Lambda >= 1");
    auto spec = spectrum(shift, Lambda);
    const auto& v = spec.values;
    const std::size_t P = v.size();
    std::uint64_t count = 0;
    std::size_t lo = 0, hi = 0;
    for (std::size_t j = 0; j < P; ++j) {
        // window k with v[k] - v[j] in (a, b); both bounds move monotonically
        while (hi < P && v[hi] - v[j] < b) ++hi;
        while (lo < P && !(v[lo] - v[j] > a)) ++lo;
        if (hi > lo) count += hi - lo;
        if (a < 0.0 && 0.0 < b) --count;  // exclude k = j
    }
    return double(count) / (kPi * Lambda);
}

cplx identity_lattice_sum(const theta::GaussianProfile& f, const theta::GaussianProfile& g,
                          const theta::WindowGaussian& h, double T, const ShiftVector& shift,
                          double tol) {
    if (f.k != 2 || g.k != 2) throw std::invalid_argument("identity_lattice_sum: need k = 2");
    if (!(T >= 1)) throw std::invalid_argument("identity_lattice_sum: need T >= 1");
    const double Tsq = T * T;
    const double hmax = std::fabs(h.amplitude) * h.scale;

    // box radius in m: outside, both Gaussian factors are below the certified
    // shell tail; pick S so the ignored pairs cost < tol/2
    const double af = f.width / Tsq, ag = g.width / Tsq;
    auto pair_tail = [&](int S) {
        double tf = 0, tg = 0, Sf = 0, Sg = 0;
        // crude uppers for the full sums: lattice Gaussian mass ~ (1 + 1/sqrt(a))^2
        Sf = std::pow(1.0 + 1.0 / std::sqrt(af), 2.0);
        Sg = std::pow(1.0 + 1.0 / std::sqrt(ag), 2.0);
        tf = [&] { double t = 0; for (int s = S + 1; s < S + 400; ++s) { double term = 4.0 * (2.0 * s + 1.0) * std::exp(-kPi * af * (s - 0.5) * (s - 0.5)); t += term; if (term < 1e-300) break; } return t; }();
        tg = [&] { double t = 0; for (int s = S + 1; s < S + 400; ++s) { double term = 4.0 * (2.0 * s + 1.0) * std::exp(-kPi * ag * (s - 0.5) * (s - 0.5)); t += term; if (term < 1e-300) break; } return t; }();
        return (tf * Sg + Sf * tg) * hmax / Tsq;
    };
    int S = int(std::ceil(std::sqrt(std::max(1.0, 40.0 / (kPi * std::min(af, ag))))));
    while (pair_tail(S) > tol / 2 && S < 4000) ++S;
    if (pair_tail(S) > tol / 2)
        throw budget_error("identity_lattice_sum: box cap reached", pair_tail(S));

    struct Pt {
        double s, cf, cg;
    };
    std::vector<Pt> pts;
    const long long cx = (long long)std::nearbyint(shift.alpha);
    const long long cy = (long long)std::nearbyint(shift.beta);
    double sum_f = 0, sum_g = 0;
    for (long long mx = cx - S; mx <= cx + S; ++mx)
        for (long long my = cy - S; my <= cy + S; ++my) {
            double da = double(mx) - shift.alpha, db = double(my) - shift.beta;
            double s = da * da + db * db;
            Pt p{s, std::exp(-kPi * f.width * s / Tsq), std::exp(-kPi * g.width * s / Tsq)};
            pts.push_back(p);
            sum_f += p.cf;
            sum_g += p.cg;
        }
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.s < b.s; });

    // pairs with |Q| beyond W contribute less than sum_f sum_g |h^|(W/2) / T^2
    double W = 1.0;
    while (sum_f * sum_g * std::abs(h.fourier(-W / 2)) / Tsq > tol / 4 && W < 1e6) W *= 1.25;

    Kahan re, im;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (hi < pts.size() && pts[hi].s - pts[i].s <= W) ++hi;
        while (lo < pts.size() && pts[i].s - pts[lo].s > W) ++lo;
        for (std::size_t j = lo; j < hi; ++j) {
            cplx term = pts[i].cf * pts[j].cg * h.fourier(-0.5 * (pts[i].s - pts[j].s));
            re.add(term.real());
            im.add(term.imag());
        }
    }
    return cplx(re.value(), im.value()) / Tsq;
}

namespace {

// 1-D theta factor sum_m q_m e(u (m - c)^2 / 2) with q_m = exp(-pi width v (m-c)^2)
struct ThetaFactorTerms {
    std::vector<double> d;   // (m - c)^2
    std::vector<double> cf;  // coefficient for profile f
    std::vector<double> cg;  // coefficient for profile g
    double tail_f = 0, tail_g = 0;
};

ThetaFactorTerms theta_factor(double center, double wf, double wg, double v, double tol) {
    ThetaFactorTerms t;
    const double amin = std::min(wf, wg) * v;
    int S = 1;
    double tail;
    for (;; ++S) {
        tail = 2.0 * std::exp(-kPi * amin * (S - 0.5) * (S - 0.5)) /
               std::max(1e-12, 1.0 - std::exp(-kPi * amin * 2.0 * S));
        if (tail <= tol || S >= 100000) break;
    }
    if (tail > tol) throw budget_error("theta_factor: cap reached", tail);
    const long long c0 = (long long)std::nearbyint(center);
    for (long long m = c0 - S; m <= c0 + S; ++m) {
        double dd = (double(m) - center) * (double(m) - center);
        t.d.push_back(dd);
        t.cf.push_back(std::exp(-kPi * wf * v * dd));
        t.cg.push_back(std::exp(-kPi * wg * v * dd));
    }
    t.tail_f = 2.0 * std::exp(-kPi * wf * v * (S - 0.5) * (S - 0.5)) /
               std::max(1e-12, 1.0 - std::exp(-kPi * wf * v * 2.0 * S));
    t.tail_g = 2.0 * std::exp(-kPi * wg * v * (S - 0.5) * (S - 0.5)) /
               std::max(1e-12, 1.0 - std::exp(-kPi * wg * v * 2.0 * S));
    return t;
}

}  // namespace

ThetaIdentityResult theta_identity_check(const theta::GaussianProfile& f,
                                         const theta::GaussianProfile& g,
                                         const theta::WindowGaussian& h, double T,
                                         const ShiftVector& shift, double tol) {
    if (f.k != 2 || g.k != 2) throw std::invalid_argument("theta_identity_check: need k = 2");
    if (!(T >= 1)) throw std::invalid_argument("theta_identity_check: need T >= 1");
    ThetaIdentityResult out;
    out.rhs = identity_lattice_sum(f, g, h, T, shift, tol / 2);

    // lhs: with phi = 0 and xi1 = 0 the theta sum factors across coordinates
    const double v = 1.0 / (T * T);
    auto fa = theta_factor(shift.alpha, f.width, g.width, v, 1e-14);
    auto fb = theta_factor(shift.beta, f.width, g.width, v, 1e-14);

    auto theta_pair = [&](double u) -> cplx {
        cplx t1f = 0, t1g = 0, t2f = 0, t2g = 0;
        for (std::size_t i = 0; i < fa.d.size(); ++i) {
            cplx ph = e_of(0.5 * u * fa.d[i]);
            t1f += fa.cf[i] * ph;
            t1g += fa.cg[i] * ph;
        }
        for (std::size_t i = 0; i < fb.d.size(); ++i) {
            cplx ph = e_of(0.5 * u * fb.d[i]);
            t2f += fb.cf[i] * ph;
            t2g += fb.cg[i] * ph;
        }
        // v^{k/4} per theta, k = 2, two thetas
        return v * t1f * t2f * std::conj(t1g * t2g);
    };

    // |Theta_f Theta_g| <= v * prod of absolute sums, u-independent
    double Mf1 = 0, Mf2 = 0, Mg1 = 0, Mg2 = 0;
    for (double c : fa.cf) Mf1 += c;
    for (double c : fb.cf) Mf2 += c;
    for (double c : fa.cg) Mg1 += c;
    for (double c : fb.cg) Mg2 += c;
    const double Mprod = v * Mf1 * Mf2 * Mg1 * Mg2;

    // truncate the u-range where the window has spent its mass
    double U = h.scale;
    auto range_tail = [&](double Uc) {
        double x = Uc / h.scale;
        return Mprod * std::fabs(h.amplitude) * h.scale * std::exp(-kPi * x * x) / (kPi * x);
    };
    while (range_tail(U) > tol / 8 && U < 1e4 * h.scale) U *= 1.25;

    // integrate in chunks of at most half an oscillation of the fastest term
    double omega_max = 0.5 * (std::max(fa.d.front(), fa.d.back()) +
                              std::max(fb.d.front(), fb.d.back()));
    double chunk = std::min(2.0 * U, 0.5 / std::max(omega_max, 1e-9));
    int nchunks = int(std::ceil(2.0 * U / chunk));
    cplx lhs = 0;
    double lo = h.center - U;
    double chunk_tol = (tol / 4) / nchunks;
    for (int i = 0; i < nchunks; ++i) {
        double a = lo + 2.0 * U * i / nchunks, b = lo + 2.0 * U * (i + 1) / nchunks;
        lhs += quad::gk_adaptive_c([&](double u) { return theta_pair(u) * h(u); }, a, b,
                                   chunk_tol, 4000);
    }
    out.lhs = lhs;
    out.diff = std::abs(out.lhs - out.rhs);
    return out;
}

std::vector<EquidistRow> equidist_experiment(const theta::GaussianProfile& f,
                                             const theta::GaussianProfile& g,
                                             const theta::WindowGaussian& h,
                                             const ShiftVector& shift,
                                             std::span<const double> v_grid) {
    if (f.k != 2 || g.k != 2) throw std::invalid_argument("equidist_experiment: need k = 2");
    // main = int f g dx * int h; the product of two centered Gaussians is radial
    double fg_integral = quad::gk_adaptive(
        [&](double r) { return 2 * kPi * r * std::exp(-kPi * (f.width + g.width) * r * r); }, 0,
        12.0 / std::sqrt(f.width + g.width), 1e-12);
    double main = fg_integral * h.integral();
    double lam = lambda_fg(
        [&](double x, double y) { return std::exp(-kPi * f.width * (x * x + y * y)); },
        [&](double x, double y) { return std::exp(-kPi * g.width * (x * x + y * y)); }, 1e-10,
        12.0 / std::sqrt(std::min(f.width, g.width)));
    double second = lam * h(0.0);

    std::vector<EquidistRow> rows;
    for (double v : v_grid) {
        if (!(v > 0) || v > 1)
            throw std::invalid_argument("equidist_experiment: v must lie in (0, 1]");
        EquidistRow row;
        row.v = v;
        row.lhs = identity_lattice_sum(f, g, h, 1.0 / std::sqrt(v), shift, 1e-8).real();
        row.main_term = main;
        row.second_term = second;
        row.residual = row.lhs - main - second;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace oppq::oppenheim
