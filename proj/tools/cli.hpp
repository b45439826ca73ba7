#pragma once

#include <string>
#include <vector>

namespace oppq::cli {

inline constexpr const char* kVersion = "oppq 0.1.0";

// Batch entry point used by both main() and the tests.
// Exit codes: 0 success, 1 usage error, 2 budget error.
int run(const std::vector<std::string>& args);

// "a:b:log10" decades, "a:b:linN" N linear points, or a comma list
std::vector<double> parse_grid(const std::string& spec);

}  // namespace oppq::cli
