#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oppq/quad.hpp"
#include "oppq/errors.hpp"
#include "oppq/theta.hpp"
#include "oracles.hpp"

using namespace oppq::theta;
using oppq::sl2::Mat2i;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("f_phi at phi = 0 is f itself") {
    GaussianProfile f{2, 1.3};
    auto st = propagate(f, 0.0);
    CHECK(st.amp == std::complex<double>(1, 0));
    CHECK(st.W == std::complex<double>(1.3, 0));
}

TEST_CASE("f_phi point formula at multiples of pi") {
    GaussianProfile f{3, 0.8};
    for (int nu : {-2, -1, 1, 2, 5}) {
        auto st = propagate(f, nu * kPi);
        // e(-k nu / 4) phase, width unchanged (the Gaussian is even)
        double arg = -2 * kPi * f.k * nu / 4.0;
        CHECK(std::abs(st.amp - std::polar(1.0, arg)) < 1e-12);
        CHECK(std::abs(st.W - std::complex<double>(0.8, 0)) < 1e-12);
    }
}

TEST_CASE("f_phi closed form vs kernel quadrature") {
    for (double width : {1.0, 1.7}) {
        GaussianProfile f{1, width};
        for (double phi : {0.3, 1.0, 2.0, 2.9, 4.0, -0.7}) {
            for (double w : {0.0, 0.7, -1.3}) {
                double wv[1] = {w};
                auto c = f_phi_closed(f, phi, wv);
                auto q = f_phi_quadrature(f, phi, wv, 1e-11);
                REQUIRE(std::abs(c - q) < 1e-8);
            }
        }
    }
    GaussianProfile f{1, 1.0};
    double w0[1] = {0.0};
    CHECK_THROWS_AS(f_phi_quadrature(f, kPi + 1e-5, w0, 1e-10), std::invalid_argument);
}

TEST_CASE("U^phi is unitary on Gaussians") {
    GaussianProfile f{2, 1.3};
    const double i0 = 1.0 / (2 * f.width);  // integral of |f|^2 over R^2
    for (double phi : {0.4, 1.9, 3.5, 5.9}) {
        auto st = propagate(f, phi);
        double iphi = std::norm(st.amp) / (2 * st.W.real());
        CHECK(iphi == doctest::Approx(i0).epsilon(1e-6));
    }
    // honest numeric cross-check of the L2 norm at one angle, k = 1
    GaussianProfile g{1, 1.0};
    auto st = propagate(g, 1.1);
    double num = oppq::quad::gk_adaptive(
        [&](double w) {
            double wv[1] = {w};
            return std::norm(eval(st, wv));
        },
        -8, 8, 1e-10);
    CHECK(num == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));  // int exp(-2 pi w^2)
}

TEST_CASE("one-parameter group law") {
    GaussianProfile f{1, 2.2};
    for (auto [phi, psi] : std::vector<std::pair<double, double>>{
             {0.3, 0.5}, {2.0, 1.8}, {1.2, -0.4}, {3.0, 3.0}}) {
        auto direct = propagate(f, phi + psi);
        auto s1 = propagate(f, psi);
        // apply U^phi to the already-propagated complex Gaussian by quadrature
        for (double w : {0.0, 0.4, 1.1}) {
            double wv[1] = {w};
            double sphi = std::sin(phi), cphi = std::cos(phi);
            double nu = std::floor(phi / kPi);
            auto e_of = [](double x) { return std::polar(1.0, 2 * kPi * x); };
            auto integrand = [&](double wp) {
                double ph = (0.5 * (w * w + wp * wp) * cphi - w * wp) / sphi;
                double wpv[1] = {wp};
                return e_of(ph) * eval(s1, wpv);
            };
            auto via_quad = e_of(-(2 * nu + 1) / 8.0) / std::sqrt(std::fabs(sphi)) *
                            oppq::quad::gk_adaptive_c(integrand, -9, 9, 1e-11);
            CHECK(std::abs(via_quad - eval(direct, wv)) < 1e-6);
        }
    }
}

TEST_CASE("theta sum fixed values") {
    GaussianProfile g1{1, 1.0};
    auto t1 = theta_sum(g1, {{0, 1}, 0, {0, 0}}, 1e-12);
    CHECK(t1.real() == doctest::Approx(1.0864348112).epsilon(1e-9));
    CHECK(std::fabs(t1.imag()) < 1e-12);

    GaussianProfile g2{2, 1.0};
    auto t2 = theta_sum(g2, {{0, 1}, 0, {0, 0, 0, 0}}, 1e-12);
    CHECK(t2.real() == doctest::Approx(t1.real() * t1.real()).epsilon(1e-9));

    // v -> infinity with xi2 off the integer lattice kills every term
    auto t3 = theta_sum(g2, {{0, 4000}, 0, {0, 0, 0.5, 0.5}}, 1e-14);
    CHECK(std::abs(t3) < 1e-12);
}

TEST_CASE("theta sum truncation honesty") {
    GaussianProfile g{2, 1.0};
    ThetaPoint p{{0.3, 0.37}, 0.9, {0.1, -0.2, 0.45, 0.7}};
    auto coarse = theta_sum_info(g, p, 1e-6);
    auto fine = theta_sum_info(g, p, 1e-12);
    CHECK(fine.M_cut > coarse.M_cut);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.tail_bound);
}

TEST_CASE("theta modulus invariant under integer shifts of xi1") {
    GaussianProfile g{2, 1.0};
    ThetaPoint p{{0.2, 0.8}, 0.5, {0.3, -0.1, 0.77, 0.21}};
    ThetaPoint q = p;
    q.xi[0] += 3;
    q.xi[1] -= 1;
    auto a = theta_sum(g, p, 1e-12);
    auto b = theta_sum(g, q, 1e-12);
    CHECK(std::abs(std::abs(a) - std::abs(b)) < 1e-11);
}

TEST_CASE("Gamma^k invariance of the theta pair") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> du(-0.5, 0.5), dv(0.2, 5.0), dphi(0, 2 * kPi),
        dxi(-1, 1);
    GaussianProfile f{2, 1.0}, g{2, 1.4};
    std::vector<GammaKElement> gens = {
        {{1, 1, 0, 1}, {0, 0, 0, 0}},   // T with vector (s; 0)
        {{0, -1, 1, 0}, {0, 0, 0, 0}},  // S with vector 0
        {{1, 0, 0, 1}, {1, -2, 3, 4}},  // pure integer translation
    };
    for (const auto& gam : gens)
        for (int it = 0; it < 8; ++it) {
            ThetaPoint p{{du(rng), dv(rng)}, dphi(rng), {dxi(rng), dxi(rng), dxi(rng), dxi(rng)}};
            auto chk = theta_pair_invariance_check(f, g, p, gam, 1e-11);
            CHECK(chk.diff < 1e-8);
        }
}

TEST_CASE("g1 cutoff shape") {
    CHECK(g1_cutoff(0.5) == 0.0);
    CHECK(g1_cutoff(1.0) == 0.0);
    CHECK(g1_cutoff(2.0) == 1.0);
    CHECK(g1_cutoff(5.0) == 1.0);
    CHECK(g1_cutoff(1.5) == doctest::Approx(0.5));
    double prev = 0;
    for (double y = 1.0; y <= 2.0; y += 0.01) {
        double v = g1_cutoff(y);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
}

TEST_CASE("truncation_xy examples and SL(2,Z) invariance") {
    for (double Y : {1.0, 2.0, 7.0}) {
        CHECK(truncation_xy({0, 3 * Y}, Y) == 1.0);
        if (Y >= 2) CHECK(truncation_xy({0, 0.5 * Y}, Y) == 0.0);
    }
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> du(-2, 2), dlv(-3, 1.5);
    for (int it = 0; it < 40; ++it) {
        std::complex<double> tau{du(rng), std::exp(dlv(rng))};
        auto g = oracles::random_sl2z(rng, 9);
        double a = truncation_xy(tau, 1.5);
        double b = truncation_xy(oppq::sl2::moebius(g, tau), 1.5);
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
}

TEST_CASE("f_big_y vanishes in the bulk window") {
    GaussianProfile f{2, 1.0};
    std::vector<double> xi{0.3, -0.2, 0.41, 0.73};
    CHECK(f_big_y(f, 2.0, {0, 1}, xi, 1e-10, 100) == 0.0);
}

TEST_CASE("f_big_y matches the term-by-term coset oracle") {
    GaussianProfile f{2, 1.0};
    std::vector<double> xi{0.0, 0.0, 0.41421356, 0.73205081};
    const double Y = 1.0;
    std::complex<double> tau{0.3, 0.002};

    // oracle: enumerate coset representatives by coprime bottom rows
    double expect = 0;
    const int B = 60;
    for (int c = -B; c <= B; ++c)
        for (int d = -B; d <= B; ++d) {
            if (std::gcd(std::abs(c), std::abs(d)) != 1) continue;
            double cd2 = std::norm(double(c) * tau + double(d));
            double vg = tau.imag() / cd2;
            double gy = g1_cutoff(vg / Y);
            if (gy == 0) continue;
            double xg1 = c * xi[0] + d * xi[2], xg2 = c * xi[1] + d * xi[3];
            double msum = 0;
            for (int m1 = -8; m1 <= 8; ++m1)
                for (int m2 = -8; m2 <= 8; ++m2) {
                    double t1 = (xg1 + m1) * std::sqrt(vg), t2 = (xg2 + m2) * std::sqrt(vg);
                    msum += std::exp(-kPi * (t1 * t1 + t2 * t2));
                }
            expect += gy * vg * msum;
        }
    double got = f_big_y(f, Y, tau, xi, 1e-10, 100);
    CHECK(got == doctest::Approx(expect).epsilon(1e-8));
    CHECK(got >= 0);
}

TEST_CASE("f_big_y left invariance under the integer affine group") {
    GaussianProfile f{2, 1.0};
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dxi(-1, 1);
    for (int it = 0; it < 5; ++it) {
        std::vector<double> xi{dxi(rng), dxi(rng), dxi(rng), dxi(rng)};
        std::complex<double> tau{0.21, 0.004};
        auto g = oracles::random_sl2z(rng, 6);
        std::vector<std::int64_t> mm{(std::int64_t)(rng() % 5) - 2, (std::int64_t)(rng() % 5) - 2,
                                     (std::int64_t)(rng() % 5) - 2, (std::int64_t)(rng() % 5) - 2};
        // gamma . (tau, xi) = (g tau, m + g xi)
        auto tau2 = oppq::sl2::moebius(g, tau);
        auto xi2 = oppq::sl2::apply_blockwise(oppq::sl2::to_real(g), xi);
        for (int i = 0; i < 4; ++i) xi2[i] += double(mm[i]);
        double a = f_big_y(f, 1.0, tau, xi, 1e-10, 4000);
        double b = f_big_y(f, 1.0, tau2, xi2, 1e-10, 4000);
        CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
}

TEST_CASE("constant coset terms vanish whenever X_Y = 1 and v <= Y") {
    GaussianProfile f{2, 1.0};
    std::vector<double> xi{0.1, 0.2, 0.41, 0.73};
    std::complex<double> tau{0.25, 0.001};
    const double Y = 4.0;
    REQUIRE(truncation_xy(tau, Y) == 1.0);  // deep in a cusp neighborhood
    auto parts = f_big_y_parts(f, Y, tau, xi, 1e-10, 4000);
    CHECK(parts.constant_coset == 0.0);
    CHECK(parts.total == parts.inverted_coset + parts.generic_cosets);
    CHECK(parts.total > 0);
}

TEST_CASE("quadrature budget exhaustion is reported") {
    // a hard discontinuity cannot be resolved with three intervals
    CHECK_THROWS_AS(oppq::quad::gk_adaptive([](double x) { return x < 0.337 ? 0.0 : 1.0; },
                                            0, 1, 1e-14, 3),
                    oppq::budget_error);
}

TEST_CASE("window gaussian fourier transform") {
    WindowGaussian h{0.8, 0.3, 1.7};
    CHECK(h.integral() == doctest::Approx(1.7 * 0.8));
    for (double s : {0.0, 0.5, -1.2}) {
        auto direct = oppq::quad::gk_adaptive_c(
            [&](double u) { return h(u) * std::polar(1.0, -2 * kPi * s * u); }, -12, 12, 1e-12);
        CHECK(std::abs(direct - h.fourier(s)) < 1e-10);
    }
    WindowGaussian zero{1.0, 0.0, 0.0};
    CHECK(zero(0.4) == 0.0);
    CHECK(std::abs(zero.fourier(0.3)) == 0.0);
}
