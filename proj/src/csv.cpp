#include "oppq/csv.hpp"

#include <cstdio>

namespace oppq::csv {

std::string field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string field(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string field_int(long long x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", x);
    return buf;
}

void Writer::raw_row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os_ << ',';
        os_ << field(fields[i]);
    }
    os_ << "\r\n";
}

}  // namespace oppq::csv
