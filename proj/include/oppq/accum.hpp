#pragma once

#include <cmath>

namespace oppq {

// Neumaier compensated accumulator
struct Kahan {
    double s = 0, c = 0;
    void add(double x) {
        double t = s + x;
        c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

}  // namespace oppq
