#include "oppq/sl2.hpp"

#include <cmath>
#include <stdexcept>

namespace oppq::sl2 {

namespace {
constexpr double kDetTol = 1e-8;
constexpr int kReduceCap = 10'000;

void require_unimodular(const Mat2d& M) {
    if (std::fabs(M.det() - 1.0) > kDetTol)
        throw std::invalid_argument("sl2: matrix is not unimodular");
}
}  // namespace

cplx moebius(const Mat2d& M, cplx tau) {
    return (M.a * tau + M.b) / (M.c * tau + M.d);
}

IwasawaCoord iwasawa(const Mat2d& M) {
    require_unimodular(M);
    double den = M.c * M.c + M.d * M.d;
    IwasawaCoord co;
    co.u = (M.a * M.c + M.b * M.d) / den;
    co.v = 1.0 / den;
    // rotation part: a(v)^{-1} u(-u) M
    Mat2d k = a_mat(co.v).inverse() * (u_mat(-co.u) * M);
    co.theta = std::atan2(k.c, k.a);
    return co;
}

Mat2d iwasawa_compose(const IwasawaCoord& c) {
    if (!(c.v > 0)) throw std::invalid_argument("iwasawa_compose: v must be positive");
    return u_mat(c.u) * a_mat(c.v) * k_mat(c.theta);
}

CuspHeight cuspidal_height_tau(cplx tau) {
    if (!(tau.imag() > 0)) throw std::invalid_argument("cuspidal_height: Im tau must be positive");
    // translate-invert reduction into the standard fundamental domain
    Mat2i g;
    for (int it = 0; it < kReduceCap; ++it) {
        double n = std::nearbyint(tau.real());
        if (n != 0) {
            tau -= n;
            i64 ni = (i64)n;
            g = Mat2i{1, -ni, 0, 1} * g;
        }
        if (std::norm(tau) < 1.0 - 1e-15) {
            tau = -1.0 / tau;
            g = Mat2i{0, -1, 1, 0} * g;
        } else {
            return {tau.imag(), g};
        }
    }
    throw std::runtime_error("cuspidal_height: reduction failed to converge");
}

CuspHeight cuspidal_height(const Mat2d& M) {
    require_unimodular(M);
    double den = M.c * M.c + M.d * M.d;
    return cuspidal_height_tau({(M.a * M.c + M.b * M.d) / den, 1.0 / den});
}

std::vector<double> apply_blockwise(const Mat2d& M, std::span<const double> xi) {
    size_t k = xi.size() / 2;
    std::vector<double> out(2 * k);
    for (size_t i = 0; i < k; ++i) {
        out[i] = M.a * xi[i] + M.b * xi[k + i];
        out[k + i] = M.c * xi[i] + M.d * xi[k + i];
    }
    return out;
}

GroupElement group_op(const GroupElement& g1, const GroupElement& g2) {
    if (g1.k != g2.k) throw std::invalid_argument("group_op: mismatched k");
    GroupElement r;
    r.k = g1.k;
    r.M = g1.M * g2.M;
    r.xi = apply_blockwise(g1.M, g2.xi);
    for (size_t i = 0; i < r.xi.size(); ++i) r.xi[i] += g1.xi[i];
    return r;
}

GroupElement group_inv(const GroupElement& g) {
    GroupElement r;
    r.k = g.k;
    r.M = g.M.inverse();
    r.xi = apply_blockwise(r.M, g.xi);
    for (double& x : r.xi) x = -x;
    return r;
}

GroupElement horocycle_point(std::span<const double> xi, double x, double y) {
    if (!(y > 0)) throw std::invalid_argument("horocycle_point: y must be positive");
    GroupElement r;
    r.k = int(xi.size() / 2);
    if (xi.size() != 2 * size_t(r.k))
        throw std::invalid_argument("horocycle_point: xi length must be even");
    r.M = u_mat(x) * a_mat(y);
    r.xi.assign(xi.begin(), xi.end());
    return r;
}

}  // namespace oppq::sl2
