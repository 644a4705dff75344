#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crisis_pulse {

// Shortest representation that parses back to the identical double.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view text);

// Splits one CSV record. Double-quoted fields with "" escapes are supported.
std::vector<std::string> split_csv_line(std::string_view line);
std::string join_csv_line(const std::vector<std::string>& fields);

std::vector<std::string> split_lines(std::string_view text);
std::string_view trim(std::string_view s);

}  // namespace crisis_pulse
