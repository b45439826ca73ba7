#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "oppq/sl2.hpp"

namespace oppq::theta {

using cplx = std::complex<double>;

// f(w) = exp(-pi * width * |w|^2) on R^k
struct GaussianProfile {
    int k = 1;
    double width = 1;
};

// A Gaussian stays Gaussian under the oscillator propagator, with complex
// amplitude and width: f_phi(w) = amp * exp(-pi W |w|^2), Re W > 0.
struct GaussState {
    int k = 1;
    cplx amp = 1;
    cplx W = 1;
};

GaussState propagate(const GaussianProfile& f, double phi);
cplx eval(const GaussState& s, std::span<const double> w);
cplx f_phi_closed(const GaussianProfile& f, double phi, std::span<const double> w);
// direct integration of the propagator kernel against f; phi must stay
// 1e-3 away from multiples of pi
cplx f_phi_quadrature(const GaussianProfile& f, double phi, std::span<const double> w,
                      double tol);

// tau = u + iv (v > 0), angle phi, xi = (xi1; xi2) of length 2k
struct ThetaPoint {
    cplx tau{0, 1};
    double phi = 0;
    std::vector<double> xi;
};

struct ThetaSumInfo {
    cplx value;
    double tail_bound;
    int M_cut;
};
ThetaSumInfo theta_sum_info(const GaussianProfile& f, const ThetaPoint& p, double tol);
cplx theta_sum(const GaussianProfile& f, const ThetaPoint& p, double tol);

// element (M, (ab s; cd s) + m) with s = (1/2, ..., 1/2)
struct GammaKElement {
    sl2::Mat2i M;
    std::vector<std::int64_t> m;  // length 2k

    std::vector<double> vector_part(int k) const;
};

ThetaPoint left_translate(const GammaKElement& g, const ThetaPoint& p);

struct InvarianceCheck {
    cplx val, val_translated;
    double diff;
};
InvarianceCheck theta_pair_invariance_check(const GaussianProfile& f, const GaussianProfile& g,
                                            const ThetaPoint& p, const GammaKElement& gamma,
                                            double tol);

// fixed smooth step: 0 on (0,1], 1 on [2,inf)
double g1_cutoff(double y);

// X_Y(tau) = g1(Y(tau)/Y): 0 at cuspidal height <= Y, 1 at height >= 2Y
double truncation_xy(cplx tau, double Y);

// majorant F_{f,Y}(tau; xi), evaluated through its three coset groups;
// only cosets with Im(gamma tau) > Y contribute.
struct FBigYParts {
    double constant_coset = 0;   // (c,d) = (0, +-1)
    double inverted_coset = 0;   // (c,d) = (+-1, 0)
    double generic_cosets = 0;   // coprime c,d != 0
    double total = 0;
    double tail_bound = 0;
};
FBigYParts f_big_y_parts(const GaussianProfile& f, double Y, cplx tau,
                         std::span<const double> xi, double tol, int cd_max);
double f_big_y(const GaussianProfile& f, double Y, cplx tau, std::span<const double> xi,
               double tol, int cd_max);

// h(u) = amplitude * exp(-pi ((u - center)/scale)^2), with closed-form
// Fourier transform h^(s) = integral h(u) e(-su) du.
struct WindowGaussian {
    double scale = 1;
    double center = 0;
    double amplitude = 1;

    double operator()(double u) const;
    cplx fourier(double s) const;
    double integral() const { return amplitude * scale; }
};

}  // namespace oppq::theta
