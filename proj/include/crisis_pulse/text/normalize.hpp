#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>

namespace crisis_pulse::text {

// ASCII smileys removed when they stand as a whole whitespace-delimited token.
// Matching is case-sensitive.
using SmileyTable = std::set<std::string, std::less<>>;

const SmileyTable& default_smileys();

// One entry per line, '#' starts a comment line. Entries made only of
// lowercase letters and digits are dropped: they are indistinguishable from
// words after cleaning and would make normalize non-idempotent.
SmileyTable load_smileys(const std::filesystem::path& path);
SmileyTable parse_smileys(std::string_view contents);

// Cleans raw message text down to lowercase ASCII letters, digits and single
// spaces. In order: HTML entities decoded and tags stripped; URLs removed;
// @mentions and #hashtags removed whole; emoji code points and smiley tokens
// removed; everything else that is not a letter or digit becomes a space.
// The reserved tokens "rt" and "fav" are dropped from the cleaned token
// stream, which keeps the function idempotent.
std::string normalize(std::string_view text, const SmileyTable& smileys = default_smileys());

// Exposed for tests.
std::string decode_html_entities(std::string_view text);
bool is_emoji_codepoint(char32_t cp);

}  // namespace crisis_pulse::text
