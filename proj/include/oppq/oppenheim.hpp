#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "oppq/theta.hpp"

namespace oppq::oppenheim {

using cplx = std::complex<double>;

struct ShiftVector {
    double alpha = 0, beta = 0;
};

// Q(x) = (x1-a)^2 + (x2-b)^2 - (x3-a)^2 - (x4-b)^2
double q_eval(const std::array<double, 4>& x, const ShiftVector& shift);

// lambda_f = 1/2 int_0^inf int_0^2pi int_0^2pi f(r cos z1, r sin z1, r cos z2, r sin z2) dz1 dz2 r dr
// f must be negligible beyond radius r_max (in the r variable above).
double lambda_f(const std::function<double(double, double, double, double)>& f,
                double quad_tol, double r_max);

// lambda_{f,g} = int_0^inf (int f dzeta)(int g dzeta) r dr for tests on R^2
double lambda_fg(const std::function<double(double, double)>& f,
                 const std::function<double(double, double)>& g, double quad_tol,
                 double r_max);

// all values (m-alpha)^2 + (n-beta)^2 < Lambda, sorted ascending with multiplicity
struct SpectrumList {
    double Lambda = 0;
    ShiftVector shift;
    std::vector<double> values;
};
SpectrumList spectrum(const ShiftVector& shift, double Lambda,
                      std::size_t point_cap = 10'000'000);

struct CountQuery {
    double a = 0, b = 1;
    double T = 1;
};
enum class CountMethod { Brute, Fenwick };

// T^-2 #{x in Z^4 \ Delta : |x| < T, a < Q(x) < b}; both methods share the
// same floating predicates and agree exactly.
double count_window(const ShiftVector& shift, const CountQuery& q, CountMethod method);

// T^-2 sum_{m in Z^4 \ Delta} f(m/T) g(Q(m)); terms with |f| < 1e-15 are
// dropped (callers normalize f so its maximum is order 1), and r_max is the
// radius in f's units beyond which f stays below that threshold.
double count_smooth(const std::function<double(double, double, double, double)>& f,
                    const std::function<double(double)>& g, const ShiftVector& shift,
                    double T, double r_max);

// R2[a,b](Lambda), sliding window over the sorted spectrum
double pair_correlation(const ShiftVector& shift, double a, double b, double Lambda);

// both sides of the theta/lattice identity at v = T^-2:
//   lhs = int Theta_f anti(Theta_g)(u + i T^-2, 0; (0, xi2)) h(u) du   (quadrature)
//   rhs = T^-2 sum sum f((m1-xi2)/T) g((m2-xi2)/T) h^(-Q/2)            (certified sum)
struct ThetaIdentityResult {
    cplx lhs, rhs;
    double diff;
};
ThetaIdentityResult theta_identity_check(const theta::GaussianProfile& f,
                                         const theta::GaussianProfile& g,
                                         const theta::WindowGaussian& h, double T,
                                         const ShiftVector& shift, double tol);

// equidistribution-limit table: lhs vs main = int f g dx * int h and
// second = lambda_{f,g} h(0). The lhs is evaluated through the lattice-sum
// form of the theta identity at T = v^{-1/2}, which is an exact
// rearrangement of the u-integral (verified independently by
// theta_identity_check); direct quadrature is impractical below v ~ 1e-2.
struct EquidistRow {
    double v = 0;
    double lhs = 0;
    double main_term = 0;
    double second_term = 0;
    double residual = 0;
};
std::vector<EquidistRow> equidist_experiment(const theta::GaussianProfile& f,
                                             const theta::GaussianProfile& g,
                                             const theta::WindowGaussian& h,
                                             const ShiftVector& shift,
                                             std::span<const double> v_grid);

// certified lattice-sum evaluation of the identity's right hand side
cplx identity_lattice_sum(const theta::GaussianProfile& f, const theta::GaussianProfile& g,
                          const theta::WindowGaussian& h, double T, const ShiftVector& shift,
                          double tol);

}  // namespace oppq::oppenheim
