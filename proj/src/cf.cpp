#include "oppq/cf.hpp"

#include <mpfr.h>

#include <stdexcept>
#include <string>

namespace oppq::numtheory {

namespace {
constexpr mpfr_prec_t kPrec = 192;
constexpr double kStepGuard = 1e-12;   // can't trust floor() closer than this to 1
// below this a remainder is treated as a true zero at working precision
constexpr double kZeroFloor = 0x1p-160;
}  // namespace

struct ExtReal::Impl {
    mpfr_t v;
    Impl() { mpfr_init2(v, kPrec); }
    ~Impl() { mpfr_clear(v); }
};

ExtReal::ExtReal() : impl_(std::make_unique<Impl>()) {}

ExtReal::ExtReal(double x) : ExtReal() { mpfr_set_d(impl_->v, x, MPFR_RNDN); }

ExtReal::ExtReal(const ExtReal& o) : ExtReal() { mpfr_set(impl_->v, o.impl_->v, MPFR_RNDN); }

ExtReal& ExtReal::operator=(const ExtReal& o) {
    if (this != &o) mpfr_set(impl_->v, o.impl_->v, MPFR_RNDN);
    return *this;
}

ExtReal::~ExtReal() = default;

ExtReal ExtReal::sqrt_of(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("ExtReal::sqrt_of: negative argument");
    ExtReal r;
    mpfr_set_si(r.impl_->v, n, MPFR_RNDN);
    mpfr_sqrt(r.impl_->v, r.impl_->v, MPFR_RNDN);
    return r;
}

ExtReal ExtReal::golden_ratio() {
    ExtReal r = sqrt_of(5);
    mpfr_add_si(r.impl_->v, r.impl_->v, 1, MPFR_RNDN);
    mpfr_div_si(r.impl_->v, r.impl_->v, 2, MPFR_RNDN);
    return r;
}

ExtReal ExtReal::rational(std::int64_t p, std::int64_t q) {
    if (q == 0) throw std::invalid_argument("ExtReal::rational: zero denominator");
    ExtReal r;
    mpfr_set_si(r.impl_->v, p, MPFR_RNDN);
    mpfr_div_si(r.impl_->v, r.impl_->v, q, MPFR_RNDN);
    return r;
}

double ExtReal::to_double() const { return mpfr_get_d(impl_->v, MPFR_RNDN); }

CFExpansion continued_fraction(const ExtReal& x, int depth) {
    if (depth < 1 || depth > kCFDepthCap)
        throw std::invalid_argument("continued_fraction: depth must be in [1, 64]");
    if (!mpfr_number_p(x.impl()->v))
        throw std::invalid_argument("continued_fraction: x must be finite");

    CFExpansion out;
    out.x = x.to_double();

    mpfr_t rem, a, frac;
    mpfr_init2(rem, kPrec);
    mpfr_init2(a, kPrec);
    mpfr_init2(frac, kPrec);
    mpfr_set(rem, x.impl()->v, MPFR_RNDN);

    std::int64_t pkm1 = 0, qkm1 = 1;  // p_{-2}, q_{-2}
    std::int64_t pk = 1, qk = 0;      // p_{-1}, q_{-1}; updated to p_k, q_k per step

    try {
        for (int k = 0; k < depth; ++k) {
            mpfr_floor(a, rem);
            if (!mpfr_fits_slong_p(a, MPFR_RNDN))
                throw std::range_error("continued_fraction: quotient exceeds int64");
            std::int64_t ak = mpfr_get_si(a, MPFR_RNDN);
            mpfr_sub(frac, rem, a, MPFR_RNDN);
            double f = mpfr_get_d(frac, MPFR_RNDN);
            if (f > 1.0 - kStepGuard)
                throw precision_error("continued_fraction: remainder too close to 1", k - 1);
            if (f < kStepGuard && f >= kZeroFloor)
                throw precision_error("continued_fraction: remainder in the guard band", k - 1);

            __int128 pw = (__int128)ak * pk + pkm1;
            __int128 qw = (__int128)ak * qk + qkm1;
            if (pw > INT64_MAX || pw < INT64_MIN || qw > INT64_MAX)
                throw std::range_error("continued_fraction: convergent exceeds int64");
            pkm1 = pk; qkm1 = qk;
            pk = (std::int64_t)pw; qk = (std::int64_t)qw;
            out.quotients.push_back(ak);
            out.convergents.emplace_back(pk, qk);

            if (f < kZeroFloor) {
                out.exact = true;
                break;
            }
            mpfr_ui_div(rem, 1, frac, MPFR_RNDN);
        }
    } catch (...) {
        mpfr_clears(rem, a, frac, (mpfr_ptr)nullptr);
        throw;
    }
    mpfr_clears(rem, a, frac, (mpfr_ptr)nullptr);
    return out;
}

CFExpansion continued_fraction(double x, int depth) {
    return continued_fraction(ExtReal(x), depth);
}

}  // namespace oppq::numtheory
