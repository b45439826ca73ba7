#pragma once

#include <concepts>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace oppq::csv {

// RFC 4180 quoting; '.' decimal point; 17 significant digits for doubles so
// identical inputs always serialize byte-identically.
std::string field(const std::string& s);
std::string field(double x);
std::string field_int(long long x);

template <std::integral T>
std::string field(T x) {
    return field_int((long long)x);
}

// Streaming writer: header first, then one row at a time.
class Writer {
public:
    explicit Writer(std::ostream& os) : os_(os) {}

    void header(const std::vector<std::string>& names) { raw_row(names); }
    void row(const std::vector<std::string>& fields) { raw_row(fields); }

private:
    void raw_row(const std::vector<std::string>& fields);
    std::ostream& os_;
};

}  // namespace oppq::csv
