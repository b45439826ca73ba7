#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "oppq/errors.hpp"

namespace oppq::numtheory {

// Extended-precision real (192 significand bits) for continued-fraction
// expansion. Quadratic irrationals must be built through sqrt_of/golden_ratio;
// a plain double only carries 53 bits and the expansion will flag precision
// exhaustion once those are spent.
class ExtReal {
public:
    explicit ExtReal(double x);
    ExtReal(const ExtReal&);
    ExtReal& operator=(const ExtReal&);
    ~ExtReal();

    static ExtReal sqrt_of(std::int64_t n);      // sqrt(n), n >= 0
    static ExtReal golden_ratio();               // (1+sqrt 5)/2
    static ExtReal rational(std::int64_t p, std::int64_t q);

    double to_double() const;

    struct Impl;
    Impl* impl() const { return impl_.get(); }

private:
    ExtReal();
    std::unique_ptr<Impl> impl_;
};

struct CFExpansion {
    double x = 0;                                 // double image of the input
    std::vector<std::int64_t> quotients;          // a0, a1, ...
    std::vector<std::pair<std::int64_t, std::int64_t>> convergents;  // (p_k, q_k)
    bool exact = false;  // remainder vanished (rational input)
};

inline constexpr int kCFDepthCap = 64;

// Expansion truncated at `depth` quotients or at a vanishing remainder.
// Throws precision_error (naming the last trusted index) when a remainder
// falls within the 1e-12 guard of 1, or is tiny but not provably zero.
CFExpansion continued_fraction(const ExtReal& x, int depth);
CFExpansion continued_fraction(double x, int depth);

}  // namespace oppq::numtheory
