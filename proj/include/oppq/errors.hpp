#pragma once

#include <stdexcept>
#include <string>

namespace oppq {

// Thrown when a requested tolerance cannot be certified within the
// operation's resource caps. Carries the best tail/residual achieved.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

// Thrown when an iterative numeric expansion can no longer be trusted.
// last_trusted is the index of the last result known to be correct.
class precision_error : public std::runtime_error {
public:
    precision_error(const std::string& what, int last_trusted)
        : std::runtime_error(what), last_trusted_(last_trusted) {}
    int last_trusted() const { return last_trusted_; }

private:
    int last_trusted_;
};

}  // namespace oppq
