#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace oppq::dioph {

using i64 = std::int64_t;

enum class DiophMode { KappaDioph, KappaLFD, KappaAlphaLFD };

// Minimum of the defining Diophantine quantity over the search region:
//   KappaDioph:    |q xi - m| q^kappa            over 1 <= q <= bound
//   KappaLFD:      <r.xi> |r|^kappa              over 0 < |r|_inf <= bound
//   KappaAlphaLFD: <j r.xi> j^alpha |r|^kappa    over j |r|_inf <= bound
// An exact rational hit is reported as an obstruction (min_quality 0), not
// an error. Witness reproduces min_quality on re-evaluation.
struct DiophQuality {
    DiophMode mode;
    double kappa = 0, alpha = 0;
    i64 bound = 0;
    double min_quality = 0;
    bool obstruction = false;
    i64 witness_j = 1;                // q (KappaDioph) or j (KappaAlphaLFD)
    std::vector<i64> witness_r;       // nearest m (KappaDioph) or r (LFD modes)
};

DiophQuality dioph_quality(DiophMode mode, std::span<const double> xi, double kappa,
                           double alpha, i64 bound);

// Certified evaluation of the decay majorant
//   delta_{beta,xi}(T)       = sum_{r != 0} |r|^-beta sum_j (1+log+(T<j r.xi>/j)) / (j^2 + T j <j r.xi>)
//   delta~_{beta,xi}(T)      = same with weight 1 / (j^2 + T j <j r.xi>).
// The true value lies in [value, value + tail_bound], tail_bound <= tol.
enum class MajorantVariant { Full, Tilde };

struct MajorantResult {
    double value = 0;
    double tail_bound = 0;
    int R_cut = 0;    // sup-norm radius of the r-box summed exactly
    i64 J_cut = 0;    // largest per-r inner truncation used
};

MajorantResult delta_majorant(double beta, std::span<const double> xi, double T,
                              double tol, MajorantVariant variant);

// lhs = sum_{j <= J} 1/(j^2 + T j <j eta>) with certified tail, compared
// against (c T)^{-2/(1+kappa)} log^2(2+T). The hypothesis <j eta> >= c j^-kappa
// is checked up to the truncation; a failure reports the violating j.
struct CFSumResult {
    double lhs = 0;
    double bound = 0;
    double ratio = 0;
    double tail = 0;
    bool hypothesis_ok = true;
    i64 violating_j = 0;
};

CFSumResult cf_sum(double eta, double T, double kappa, double c);

// value = sum_{d <= D} sum_m (1 + T |d alpha + m|)^{-A}, terms below 1e-15
// dropped; piecewise_bound is the three-branch comparison expression for a
// [kappa; c]-Diophantine alpha (raw, without the suppressed constant).
struct ShiftedLatticeSum {
    double value = 0;
    double piecewise_bound = 0;
    int branch = 0;  // 1, 2, or 3 in decreasing cT
};

ShiftedLatticeSum shifted_lattice_sum(std::span<const double> alpha, double D, double T,
                                      double A, double kappa, double c);

// least-squares slope of log(value) against log(T); needs >= 4 points,
// strictly increasing T, positive values
double decay_fit(std::span<const std::pair<double, double>> pairs);

}  // namespace oppq::dioph
