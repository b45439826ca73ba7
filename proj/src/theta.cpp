#include "oppq/theta.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "oppq/accum.hpp"
#include "oppq/errors.hpp"
#include "oppq/quad.hpp"

namespace oppq::theta {

namespace {

constexpr double kPi = std::numbers::pi;

cplx e_of(double x) {
    double t = 2 * kPi * x;
    return {std::cos(t), std::sin(t)};
}

// distance of phi to the nearest multiple of pi
double dist_to_pi_grid(double phi) {
    double t = phi / kPi;
    return std::fabs(t - std::nearbyint(t)) * kPi;
}

// sum_{s > S} #shell(s) * exp(-pi a (s - 1/2)^2), an overcount of the
// Gaussian lattice mass outside the sup-norm box of radius S
double gaussian_shell_tail(int k, double a, int S) {
    // below this width the sum has ~1e9 significant terms; report an
    // unbounded tail so callers fail their budget instead of looping
    if (a < 1e-9) return std::numeric_limits<double>::infinity();
    double tail = 0;
    for (int s = S + 1;; ++s) {
        double shell = 2.0 * k * std::pow(2.0 * s + 1.0, k - 1);
        double term = shell * std::exp(-kPi * a * (s - 0.5) * (s - 0.5));
        tail += term;
        // once the ratio of consecutive terms is < 1/2 the rest is < term
        if (term < 1e-300) break;
        double ratio = std::exp(-kPi * a * (2.0 * s)) * std::pow((2.0 * s + 3.0) / (2.0 * s + 1.0), k - 1);
        if (ratio < 0.5 && term / (1.0 - ratio) < 1e-4 * tail + 1e-300) {
            tail += term * ratio / (1.0 - ratio);
            break;
        }
    }
    return tail;
}

struct LatticeGaussian {
    double value;
    double tail;
    int S;
};

// sum_{m in Z^k} exp(-pi a |center + m|^2), certified to abs_tail <= target
LatticeGaussian gauss_lattice_sum(int k, double a, std::span<const double> center,
                                  double target) {
    int S = 1;
    while (gaussian_shell_tail(k, a, S) > target && S < 4000) ++S;
    double tail = gaussian_shell_tail(k, a, S);
    if (tail > target) throw budget_error("gauss_lattice_sum: box cap reached", tail);

    std::vector<long long> c(k), m(k);
    for (int i = 0; i < k; ++i) {
        c[i] = (long long)std::nearbyint(-center[i]);
        m[i] = c[i] - S;
    }
    Kahan acc;
    for (;;) {
        double nn = 0;
        for (int i = 0; i < k; ++i) {
            double t = center[i] + double(m[i]);
            nn += t * t;
        }
        acc.add(std::exp(-kPi * a * nn));
        int i = 0;
        while (i < k && ++m[i] > c[i] + S) m[i] = c[i] - S, ++i;
        if (i == k) break;
    }
    return {acc.value(), tail, S};
}

}  // namespace

GaussState propagate(const GaussianProfile& f, double phi) {
    if (f.k < 1 || !(f.width > 0)) throw std::invalid_argument("propagate: bad profile");
    GaussState st{f.k, 1.0, f.width};
    double t = phi / kPi;
    double nu_near = std::nearbyint(t);
    if (std::fabs(t - nu_near) * kPi < 1e-12) {
        // point formula at phi = nu pi; the Gaussian is even so only the
        // phase e(-k nu / 4) survives
        st.amp = e_of(-f.k * nu_near / 4.0);
        return st;
    }
    double nu = std::floor(t);
    double sphi = std::sin(phi), cphi = std::cos(phi);
    cplx den = st.W * sphi - cplx(0, 1) * cphi;
    cplx Wp = (sphi - cplx(0, 1) * st.W * cphi) / den;
    cplx base = sphi > 0 ? den : -den;  // |sin phi| * (W - i cot phi) * sign fix
    st.amp = e_of(-f.k * (2 * nu + 1) / 8.0) * std::pow(base, -0.5 * f.k);
    st.W = Wp;
    return st;
}

cplx eval(const GaussState& s, std::span<const double> w) {
    double nn = 0;
    for (double x : w) nn += x * x;
    return s.amp * std::exp(-kPi * s.W * nn);
}

cplx f_phi_closed(const GaussianProfile& f, double phi, std::span<const double> w) {
    return eval(propagate(f, phi), w);
}

cplx f_phi_quadrature(const GaussianProfile& f, double phi, std::span<const double> w,
                      double tol) {
    if (dist_to_pi_grid(phi) < 1e-3)
        throw std::invalid_argument("f_phi_quadrature: phi within 1e-3 of a multiple of pi");
    if (int(w.size()) != f.k) throw std::invalid_argument("f_phi_quadrature: bad w length");
    double nu = std::floor(phi / kPi);
    double sphi = std::sin(phi), cphi = std::cos(phi);
    double as = std::fabs(sphi);
    // kernel and Gaussian factor over coordinates; 1-D integrals suffice
    double L = std::sqrt(80.0 / (kPi * f.width));
    cplx prod = e_of(-f.k * (2 * nu + 1) / 8.0) * std::pow(as, -0.5 * f.k);
    for (int i = 0; i < f.k; ++i) {
        double wi = w[i];
        auto integrand = [&](double wp) -> cplx {
            double ph = (0.5 * (wi * wi + wp * wp) * cphi - wi * wp) / sphi;
            return e_of(ph) * std::exp(-kPi * f.width * wp * wp);
        };
        prod *= quad::trapezoid_doubling_c(integrand, -L, L, tol / f.k);
    }
    return prod;
}

ThetaSumInfo theta_sum_info(const GaussianProfile& f, const ThetaPoint& p, double tol) {
    const int k = f.k;
    if (int(p.xi.size()) != 2 * k) throw std::invalid_argument("theta_sum: xi length must be 2k");
    const double v = p.tau.imag(), u = p.tau.real();
    if (!(v > 0)) throw std::invalid_argument("theta_sum: Im tau must be positive");

    GaussState st = propagate(f, p.phi);
    const double aeff = st.W.real() * v;
    const double scale = std::abs(st.amp) * std::pow(v, 0.25 * k);

    int S = 1;
    while (scale * gaussian_shell_tail(k, aeff, S) > tol && S < 4000) ++S;
    double tail = scale * gaussian_shell_tail(k, aeff, S);
    if (tail > tol) throw budget_error("theta_sum: term cap reached", tail);

    std::vector<long long> c(k), m(k);
    for (int i = 0; i < k; ++i) {
        c[i] = (long long)std::nearbyint(p.xi[k + i]);
        m[i] = c[i] - S;
    }
    Kahan re, im;
    for (;;) {
        double s = 0, dot1 = 0;
        for (int i = 0; i < k; ++i) {
            double t = double(m[i]) - p.xi[k + i];
            s += t * t;
            dot1 += double(m[i]) * p.xi[i];
        }
        cplx term = st.amp * std::exp(-kPi * st.W * (v * s)) * e_of(0.5 * s * u + dot1);
        re.add(term.real());
        im.add(term.imag());
        int i = 0;
        while (i < k && ++m[i] > c[i] + S) m[i] = c[i] - S, ++i;
        if (i == k) break;
    }
    cplx val = std::pow(v, 0.25 * k) * cplx(re.value(), im.value());
    return {val, tail, S};
}

cplx theta_sum(const GaussianProfile& f, const ThetaPoint& p, double tol) {
    return theta_sum_info(f, p, tol).value;
}

std::vector<double> GammaKElement::vector_part(int k) const {
    if (int(m.size()) != 2 * k) throw std::invalid_argument("GammaKElement: m length must be 2k");
    std::vector<double> v(2 * k);
    for (int i = 0; i < k; ++i) {
        v[i] = 0.5 * double(M.a * M.b) + double(m[i]);
        v[k + i] = 0.5 * double(M.c * M.d) + double(m[k + i]);
    }
    return v;
}

ThetaPoint left_translate(const GammaKElement& g, const ThetaPoint& p) {
    const int k = int(p.xi.size()) / 2;
    ThetaPoint q;
    q.tau = sl2::moebius(g.M, p.tau);
    q.phi = p.phi + std::atan2(double(g.M.c) * p.tau.imag(),
                               double(g.M.c) * p.tau.real() + double(g.M.d));
    q.xi = sl2::apply_blockwise(sl2::to_real(g.M), p.xi);
    std::vector<double> vec = g.vector_part(k);
    for (int i = 0; i < 2 * k; ++i) q.xi[i] += vec[i];
    return q;
}

InvarianceCheck theta_pair_invariance_check(const GaussianProfile& f, const GaussianProfile& g,
                                            const ThetaPoint& p, const GammaKElement& gamma,
                                            double tol) {
    InvarianceCheck out;
    out.val = theta_sum(f, p, tol) * std::conj(theta_sum(g, p, tol));
    ThetaPoint q = left_translate(gamma, p);
    out.val_translated = theta_sum(f, q, tol) * std::conj(theta_sum(g, q, tol));
    out.diff = std::abs(out.val - out.val_translated);
    return out;
}

double g1_cutoff(double y) {
    if (y <= 1) return 0;
    if (y >= 2) return 1;
    double t = y - 1;
    double s0 = std::exp(-1.0 / t), s1 = std::exp(-1.0 / (1.0 - t));
    return s0 / (s0 + s1);
}

double truncation_xy(cplx tau, double Y) {
    if (!(Y >= 1)) throw std::invalid_argument("truncation_xy: Y must be >= 1");
    return g1_cutoff(sl2::cuspidal_height_tau(tau).Y / Y);
}

FBigYParts f_big_y_parts(const GaussianProfile& f, double Y, cplx tau,
                         std::span<const double> xi, double tol, int cd_max) {
    const int k = f.k;
    if (int(xi.size()) != 2 * k) throw std::invalid_argument("f_big_y: xi length must be 2k");
    if (!(Y >= 1)) throw std::invalid_argument("f_big_y: Y must be >= 1");
    const double v = tau.imag(), u = tau.real();
    if (!(v > 0)) throw std::invalid_argument("f_big_y: Im tau must be positive");

    FBigYParts out;
    std::span<const double> xi1 = xi.subspan(0, k), xi2 = xi.subspan(k, k);
    std::vector<double> center(k);
    const double mtol = tol / 8;

    // sum_m f((xig + m) sqrt(vg)) vg^{k/2} g_Y(vg) for one coset value
    auto coset_term = [&](std::span<const double> xig, double vg) -> double {
        double gy = g1_cutoff(vg / Y);
        if (gy == 0.0) return 0.0;
        for (int i = 0; i < k; ++i) center[i] = xig[i];
        auto ls = gauss_lattice_sum(k, f.width * vg, center, mtol);
        out.tail_bound += ls.tail * std::pow(vg, 0.5 * k);
        return gy * std::pow(vg, 0.5 * k) * ls.value;
    };

    std::vector<double> vv(k), neg(k);

    // (c,d) = (0, +-1): v_gamma = v, xi_gamma = +-xi2
    for (int i = 0; i < k; ++i) vv[i] = xi2[i], neg[i] = -xi2[i];
    out.constant_coset = coset_term(vv, v) + coset_term(neg, v);

    // (c,d) = (+-1, 0): v_gamma = v/|tau|^2, xi_gamma = +-xi1
    double at2 = std::norm(tau);
    for (int i = 0; i < k; ++i) vv[i] = xi1[i], neg[i] = -xi1[i];
    out.inverted_coset = coset_term(vv, v / at2) + coset_term(neg, v / at2);

    // coprime c,d != 0 with |c tau + d|^2 < v/Y (all other g_Y factors vanish)
    double climit = std::sqrt(v / Y) / v;
    if (climit > double(cd_max))
        throw budget_error("f_big_y: cd range exceeds cd_max", climit);
    for (long long c = -(long long)climit; c <= (long long)climit; ++c) {
        if (c == 0) continue;
        double disc = v / Y - double(c) * double(c) * v * v;
        if (disc <= 0) continue;
        double w = std::sqrt(disc);
        long long dlo = (long long)std::ceil(-double(c) * u - w);
        long long dhi = (long long)std::floor(-double(c) * u + w);
        if (std::max(std::llabs(dlo), std::llabs(dhi)) > (long long)cd_max)
            throw budget_error("f_big_y: cd range exceeds cd_max", double(std::max(std::llabs(dlo), std::llabs(dhi))));
        for (long long d = dlo; d <= dhi; ++d) {
            if (d == 0 || std::gcd(std::llabs(c), std::llabs(d)) != 1) continue;
            double cd2 = std::norm(double(c) * tau + double(d));
            if (!(cd2 < v / Y)) continue;
            for (int i = 0; i < k; ++i) vv[i] = double(c) * xi1[i] + double(d) * xi2[i];
            out.generic_cosets += coset_term(vv, v / cd2);
        }
    }

    out.total = out.constant_coset + out.inverted_coset + out.generic_cosets;
    return out;
}

double f_big_y(const GaussianProfile& f, double Y, cplx tau, std::span<const double> xi,
               double tol, int cd_max) {
    return f_big_y_parts(f, Y, tau, xi, tol, cd_max).total;
}

double WindowGaussian::operator()(double u) const {
    double t = (u - center) / scale;
    return amplitude * std::exp(-kPi * t * t);
}

cplx WindowGaussian::fourier(double s) const {
    return amplitude * scale * std::exp(-kPi * scale * scale * s * s) * e_of(-s * center);
}

}  // namespace oppq::theta
