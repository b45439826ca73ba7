#pragma once

#include <complex>
#include <functional>

namespace oppq::quad {

// Adaptive Gauss-Kronrod (G7, K15) on [a, b] to absolute tolerance tol.
// Throws budget_error when the interval budget is exhausted.
double gk_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                   int max_intervals = 200000);
std::complex<double> gk_adaptive_c(const std::function<std::complex<double>(double)>& f,
                                   double a, double b, double tol, int max_intervals = 200000);

// Trapezoid with node doubling for analytic integrands on [a, b] that decay
// at the endpoints; stops when two refinements agree to tol (relative to
// 1 + |value|). Throws budget_error on non-convergence.
std::complex<double> trapezoid_doubling_c(const std::function<std::complex<double>(double)>& f,
                                          double a, double b, double tol,
                                          int max_nodes = 1 << 21);

// Equally spaced trapezoid over one period [0, 2pi) with node doubling.
double periodic_trapezoid(const std::function<double(double)>& f, double tol,
                          int max_nodes = 1 << 20);

}  // namespace oppq::quad
