#include "crisis_pulse/text/normalize.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "crisis_pulse/util/csv.hpp"
#include "crisis_pulse/util/digest.hpp"

namespace crisis_pulse::text {
namespace {

bool is_ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Decodes one code point at s[i]; returns its byte length (1 for a stray byte,
// reported as U+FFFD).
size_t decode_utf8(std::string_view s, size_t i, char32_t& cp) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  size_t len = 1;
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    cp = b0 & 0x1F;
    len = 2;
  } else if ((b0 & 0xF0) == 0xE0) {
    cp = b0 & 0x0F;
    len = 3;
  } else if ((b0 & 0xF8) == 0xF0) {
    cp = b0 & 0x07;
    len = 4;
  } else {
    cp = 0xFFFD;
    return 1;
  }
  if (i + len > s.size()) {
    cp = 0xFFFD;
    return 1;
  }
  for (size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      cp = 0xFFFD;
      return 1;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  return len;
}

bool starts_with_ci(std::string_view s, size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (ascii_lower(s[pos + i]) != prefix[i]) return false;
  }
  return true;
}

// Tags such as <br>, </a>, <img src="...">; a bare '<' is left for the
// character filter.
std::string strip_markup(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<') {
      size_t j = i + 1;
      if (j < s.size() && (s[j] == '/' || s[j] == '!')) ++j;
      if (j < s.size() && (std::isalpha(static_cast<unsigned char>(s[j])) || s[j] == '-')) {
        const size_t close = s.find_first_of("<>", j);
        if (close != std::string_view::npos && s[close] == '>') {
          out.push_back(' ');
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

std::string remove_urls(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    const bool boundary = i == 0 || !is_ascii_alnum(static_cast<unsigned char>(s[i - 1]));
    if (starts_with_ci(s, i, "http://") || starts_with_ci(s, i, "https://") ||
        (boundary && (starts_with_ci(s, i, "www.") || starts_with_ci(s, i, "t.co/")))) {
      while (i < s.size() && !is_space(s[i])) ++i;
      out.push_back(' ');
      continue;
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

bool is_mention_char(unsigned char c) { return is_ascii_alnum(c) || c == '_'; }
// Hashtags may carry non-ASCII letters; any non-ASCII byte continues the tag.
bool is_hashtag_char(unsigned char c) { return is_ascii_alnum(c) || c == '_' || c >= 0x80; }

std::string remove_mentions_hashtags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if ((c == '@' || c == '#') && i + 1 < s.size()) {
      auto accept = c == '@' ? is_mention_char : is_hashtag_char;
      size_t j = i + 1;
      while (j < s.size() && accept(static_cast<unsigned char>(s[j]))) ++j;
      if (j > i + 1) {
        out.push_back(' ');
        i = j;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

std::string remove_emoji(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    char32_t cp;
    const size_t len = decode_utf8(s, i, cp);
    if (cp == 0xFFFD || is_emoji_codepoint(cp)) {
      out.push_back(' ');
    } else {
      out.append(s.substr(i, len));
    }
    i += len;
  }
  return out;
}

std::string remove_smiley_tokens(std::string_view s, const SmileyTable& smileys) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (is_space(s[i])) {
      out.push_back(' ');
      ++i;
      continue;
    }
    size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    const std::string_view token = s.substr(i, j - i);
    if (smileys.find(token) == smileys.end()) out.append(token);
    i = j;
  }
  return out;
}

bool is_reserved(std::string_view token) { return token == "rt" || token == "fav"; }

// Lowercases, maps every non-alphanumeric byte to a separator and drops the
// reserved tokens; output has single spaces and no leading/trailing space.
std::string clean_characters(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::string token;
  auto flush = [&] {
    if (!token.empty() && !is_reserved(token)) {
      if (!out.empty()) out.push_back(' ');
      out += token;
    }
    token.clear();
  };
  for (char c : s) {
    if (is_ascii_alnum(static_cast<unsigned char>(c))) {
      token.push_back(ascii_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

}  // namespace

bool is_emoji_codepoint(char32_t cp) {
  return (cp >= 0x1F000 && cp <= 0x1FAFF) ||  // pictographs, emoticons, transport, flags
         (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols, dingbats
         (cp >= 0x2300 && cp <= 0x23FF) ||    // misc technical (watch, hourglass)
         (cp >= 0x2B00 && cp <= 0x2BFF) ||    // arrows, stars
         (cp >= 0x2190 && cp <= 0x21FF) ||    // arrows
         (cp >= 0xFE00 && cp <= 0xFE0F) ||    // variation selectors
         (cp >= 0xE0020 && cp <= 0xE007F) ||  // tag sequences
         cp == 0x200D || cp == 0x20E3 || cp == 0x3030 || cp == 0x303D || cp == 0x3297 ||
         cp == 0x3299 || cp == 0x00A9 || cp == 0x00AE || cp == 0x2122;
}

std::string decode_html_entities(std::string_view s) {
  static constexpr std::array<std::pair<std::string_view, char32_t>, 7> kNamed{{
      {"amp", U'&'},
      {"lt", U'<'},
      {"gt", U'>'},
      {"quot", U'"'},
      {"apos", U'\''},
      {"nbsp", U' '},
      {"hellip", U'…'},
  }};
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '&') {
      const size_t semi = s.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 10) {
        const std::string_view name = s.substr(i + 1, semi - i - 1);
        bool decoded = false;
        if (name.size() > 1 && name[0] == '#') {
          char32_t cp = 0;
          unsigned long value = 0;
          const bool hex = name[1] == 'x' || name[1] == 'X';
          const std::string_view digits = name.substr(hex ? 2 : 1);
          auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value, hex ? 16 : 10);
          if (!digits.empty() && res.ec == std::errc() && res.ptr == digits.data() + digits.size() &&
              value > 0 && value <= 0x10FFFF && !(value >= 0xD800 && value <= 0xDFFF)) {
            cp = static_cast<char32_t>(value);
            append_utf8(out, cp);
            decoded = true;
          }
        } else {
          for (const auto& [entity, cp] : kNamed) {
            if (name == entity) {
              append_utf8(out, cp);
              decoded = true;
              break;
            }
          }
        }
        if (decoded) {
          i = semi + 1;
          continue;
        }
      }
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

const SmileyTable& default_smileys() {
  static const SmileyTable table{":)",  ":-)", ":(",  ":-(", ":D",  ":-D", ";)",  ";-)", ":P",
                                 ":-P", ":p",  ":-p", ":O",  ":-O", ":o",  ":/",  ":-/", ":|",
                                 ":'(", "<3",  "</3", "XD",  "xD",  "=)",  "=(",  "^_^", "-_-",
                                 "o_O", "O_o", ":*",  ";P",  ":S",  ":$",  "B)",  "8)"};
  return table;
}

SmileyTable parse_smileys(std::string_view contents) {
  SmileyTable table;
  for (const auto& raw : split_lines(contents)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    bool plain_word = true;
    for (char c : line) {
      if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) plain_word = false;
    }
    if (!plain_word) table.emplace(line);
  }
  return table;
}

SmileyTable load_smileys(const std::filesystem::path& path) { return parse_smileys(read_file(path)); }

std::string normalize(std::string_view text, const SmileyTable& smileys) {
  std::string s = strip_markup(decode_html_entities(text));
  s = remove_urls(s);
  s = remove_mentions_hashtags(s);
  s = remove_emoji(s);
  s = remove_smiley_tokens(s, smileys);
  return clean_characters(s);
}

}  // namespace crisis_pulse::text
