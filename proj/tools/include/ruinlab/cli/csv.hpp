#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ruinlab::cli {

/// Shortest decimal that parses back to the same double; '.' decimal point.
std::string format_double(double v);

/// Fixed-point with the given digits, independent of the global locale.
std::string format_fixed(double v, int digits);

/// Locale-free full-string parse. Returns false on trailing garbage.
bool parse_double(std::string_view s, double& out);

std::string join_csv(const std::vector<std::string>& fields);
std::vector<std::string> split_csv(std::string_view line);

}  // namespace ruinlab::cli
