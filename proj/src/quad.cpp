#include "oppq/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oppq/errors.hpp"

namespace oppq::quad {

namespace {

// Kronrod-15 nodes on [0,1] side (symmetric), with K15 and G7 weights.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename T>
struct GKResult {
    T integral;
    double err;
};

template <typename T, typename F>
GKResult<T> gk15(const F& f, double a, double b) {
    const double hc = 0.5 * (b - a), mid = 0.5 * (a + b);
    T fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - hc * kXgk[i]);
        fv[14 - i] = f(mid + hc * kXgk[i]);
    }
    fv[7] = f(mid);
    T resk = kWgk[7] * fv[7];
    T resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    resk *= hc;
    resg *= hc;
    return {resk, std::abs(resk - resg)};
}

template <typename T, typename F>
T adaptive(const F& f, double a, double b, double tol, int max_intervals) {
    struct Seg {
        double a, b, err;
        T val;
    };
    auto mk = [&](double lo, double hi) {
        auto r = gk15<T>(f, lo, hi);
        return Seg{lo, hi, r.err, r.integral};
    };
    std::vector<Seg> heap{mk(a, b)};
    auto cmp = [](const Seg& s, const Seg& t) { return s.err < t.err; };
    double toterr = heap[0].err;
    int used = 1;
    while (toterr > tol) {
        if (used >= max_intervals)
            throw budget_error("gk_adaptive: interval budget exhausted", toterr);
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Seg worst = heap.back();
        heap.pop_back();
        double m = 0.5 * (worst.a + worst.b);
        if (!(worst.a < m && m < worst.b))
            throw budget_error("gk_adaptive: interval underflow", toterr);
        Seg l = mk(worst.a, m), r = mk(m, worst.b);
        toterr += l.err + r.err - worst.err;
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end(), cmp);
        ++used;
    }
    T total{};
    for (const auto& s : heap) total += s.val;
    return total;
}

}  // namespace

double gk_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                   int max_intervals) {
    return adaptive<double>(f, a, b, tol, max_intervals);
}

std::complex<double> gk_adaptive_c(const std::function<std::complex<double>(double)>& f,
                                   double a, double b, double tol, int max_intervals) {
    return adaptive<std::complex<double>>(f, a, b, tol, max_intervals);
}

std::complex<double> trapezoid_doubling_c(const std::function<std::complex<double>(double)>& f,
                                          double a, double b, double tol, int max_nodes) {
    int n = 64;
    double h = (b - a) / n;
    std::complex<double> acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) acc += f(a + i * h);
    std::complex<double> prev = acc * h;
    while (n < max_nodes) {
        for (int i = 0; i < n; ++i) acc += f(a + (i + 0.5) * h);
        n *= 2;
        h *= 0.5;
        std::complex<double> cur = acc * h;
        if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    throw budget_error("trapezoid_doubling: node budget exhausted", std::abs(prev));
}

double periodic_trapezoid(const std::function<double(double)>& f, double tol, int max_nodes) {
    constexpr double twopi = 2 * std::numbers::pi;
    int n = 16;
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += f(i * twopi / n);
    double prev = acc * twopi / n;
    while (n < max_nodes) {
        for (int i = 0; i < n; ++i) acc += f((i + 0.5) * twopi / n);
        n *= 2;
        double cur = acc * twopi / n;
        if (std::fabs(cur - prev) <= tol * (1.0 + std::fabs(cur))) return cur;
        prev = cur;
    }
    throw budget_error("periodic_trapezoid: node budget exhausted", prev);
}

}  // namespace oppq::quad
