#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace oppq::sl2 {

using i64 = std::int64_t;
using cplx = std::complex<double>;

struct Mat2i {
    i64 a = 1, b = 0, c = 0, d = 1;

    i64 det() const { return a * d - b * c; }
    Mat2i operator*(const Mat2i& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2i inverse() const { return {d, -b, -c, a}; }  // valid for det = 1
    bool operator==(const Mat2i&) const = default;
};

struct Mat2d {
    double a = 1, b = 0, c = 0, d = 1;

    double det() const { return a * d - b * c; }
    Mat2d operator*(const Mat2d& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2d inverse() const { return {d, -b, -c, a}; }
    double frob() const { return std::sqrt(a * a + b * b + c * c + d * d); }
};

inline Mat2d to_real(const Mat2i& m) {
    return {double(m.a), double(m.b), double(m.c), double(m.d)};
}

inline Mat2d u_mat(double x) { return {1, x, 0, 1}; }
inline Mat2d a_mat(double y) { return {std::sqrt(y), 0, 0, 1 / std::sqrt(y)}; }
inline Mat2d k_mat(double th) {
    return {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
}

cplx moebius(const Mat2d& M, cplx tau);
inline cplx moebius(const Mat2i& M, cplx tau) { return moebius(to_real(M), tau); }

// M = u(u) a(v) k(theta); throws std::invalid_argument unless det M = 1
struct IwasawaCoord {
    double u = 0;
    double v = 1;
    double theta = 0;
};
IwasawaCoord iwasawa(const Mat2d& M);
Mat2d iwasawa_compose(const IwasawaCoord& c);

// Y = sup of Im gamma.tau over SL(2,Z) together with a gamma attaining it.
struct CuspHeight {
    double Y;
    Mat2i gamma;
};
CuspHeight cuspidal_height_tau(cplx tau);
CuspHeight cuspidal_height(const Mat2d& M);

// (M, xi) in SL(2,R) x R^{2k}; M acts blockwise on xi = (xi1; xi2).
struct GroupElement {
    int k = 1;
    Mat2d M;
    std::vector<double> xi;  // length 2k

    static GroupElement identity(int k) {
        return {k, Mat2d{}, std::vector<double>(2 * size_t(k), 0.0)};
    }
};

std::vector<double> apply_blockwise(const Mat2d& M, std::span<const double> xi);

GroupElement group_op(const GroupElement& g1, const GroupElement& g2);
GroupElement group_inv(const GroupElement& g);

// (1, xi) u(x) a(y); throws std::invalid_argument unless y > 0
GroupElement horocycle_point(std::span<const double> xi, double x, double y);

}  // namespace oppq::sl2
