#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace superint::cli {

/// Exit codes: 0 ok, 1 a check failed, 2 usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses one evaluation coordinate: a rational, or a rational multiple of pi
/// ("pi/5", "2pi/3", "3/4*pi").
double parse_coordinate(const std::string& text);

}  // namespace superint::cli
