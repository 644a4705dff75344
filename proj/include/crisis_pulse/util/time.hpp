#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace crisis_pulse {

using UtcTime = std::chrono::sys_seconds;

// Accepts "YYYY-MM-DDTHH:MM:SS" with optional fractional seconds and a "Z",
// "+00:00" or "+0000" suffix (a space may replace the 'T'). Non-UTC offsets
// are applied. Returns nullopt on anything else.
std::optional<UtcTime> parse_iso8601(std::string_view text);

// Always "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(UtcTime t);

std::optional<UtcTime> make_utc(int year, int month, int day, int hour, int minute, int second = 0);

// Parses "1h", "30m", "90s", "2d" (and bare seconds). Width must be positive.
std::optional<std::chrono::seconds> parse_duration(std::string_view text);

// Start of the width-aligned bucket (aligned to the Unix epoch) containing t.
UtcTime bucket_floor(UtcTime t, std::chrono::seconds width);

}  // namespace crisis_pulse
