#pragma once

#include <string>
#include <string_view>

namespace crisis_pulse::text {

// Porter (1980) suffix stripping, original rule set (ABLI -> ABLE, no LOGI
// rule, step 1c Y -> I whenever the stem has a vowel). Input is expected to be
// lowercase ASCII letters and digits; other bytes are treated as consonants.
std::string stem(std::string_view token);

}  // namespace crisis_pulse::text
