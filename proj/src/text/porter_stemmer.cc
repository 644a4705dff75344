#include "crisis_pulse/text/porter_stemmer.hpp"

#include <array>
#include <functional>

namespace crisis_pulse::text {
namespace {

bool is_vowel_letter(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// A 'y' is a consonant iff it starts the word or follows a vowel.
bool is_consonant(std::string_view w, size_t i) {
  if (is_vowel_letter(w[i])) return false;
  if (w[i] != 'y') return true;
  return i == 0 || !is_consonant(w, i - 1);
}

// m in [C](VC)^m[V]
int measure(std::string_view stem) {
  int m = 0;
  bool prev_vowel = false;
  for (size_t i = 0; i < stem.size(); ++i) {
    const bool cons = is_consonant(stem, i);
    if (cons && prev_vowel) ++m;
    prev_vowel = !cons;
  }
  return m;
}

bool contains_vowel(std::string_view stem) {
  for (size_t i = 0; i < stem.size(); ++i) {
    if (!is_consonant(stem, i)) return true;
  }
  return false;
}

bool ends_double_consonant(std::string_view w) {
  const size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends consonant-vowel-consonant and the last is not w, x or y.
bool ends_cvc(std::string_view w) {
  const size_t n = w.size();
  return n >= 3 && is_consonant(w, n - 3) && !is_consonant(w, n - 2) && is_consonant(w, n - 1) &&
         w[n - 1] != 'w' && w[n - 1] != 'x' && w[n - 1] != 'y';
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

using Condition = bool (*)(std::string_view);

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
  Condition condition;
};

bool m_positive(std::string_view s) { return measure(s) > 0; }
bool m_above_one(std::string_view s) { return measure(s) > 1; }
bool m_above_one_st(std::string_view s) {
  return measure(s) > 1 && !s.empty() && (s.back() == 's' || s.back() == 't');
}

// The first rule whose suffix matches decides; if its condition fails the word
// is left alone (no fall-through to shorter suffixes).
template <size_t N>
void apply_first(std::string& w, const std::array<Rule, N>& rules) {
  for (const Rule& r : rules) {
    if (!ends_with(w, r.suffix)) continue;
    const std::string_view stem(w.data(), w.size() - r.suffix.size());
    if (r.condition == nullptr || r.condition(stem)) {
      w.resize(stem.size());
      w.append(r.replacement);
    }
    return;
  }
}

void step1a(std::string& w) {
  static constexpr std::array<Rule, 4> kRules{{
      {"sses", "ss", nullptr},
      {"ies", "i", nullptr},
      {"ss", "ss", nullptr},
      {"s", "", nullptr},
  }};
  apply_first(w, kRules);
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0) w.pop_back();
    return;
  }
  size_t cut = 0;
  if (ends_with(w, "ed") && contains_vowel(std::string_view(w).substr(0, w.size() - 2))) {
    cut = 2;
  } else if (ends_with(w, "ing") && contains_vowel(std::string_view(w).substr(0, w.size() - 3))) {
    cut = 3;
  }
  if (cut == 0) return;
  w.resize(w.size() - cut);

  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w)) {
    const char last = w.back();
    if (last != 'l' && last != 's' && last != 'z') w.pop_back();
  } else if (measure(w) == 1 && ends_cvc(w)) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y") && contains_vowel(std::string_view(w).substr(0, w.size() - 1))) w.back() = 'i';
}

void step2(std::string& w) {
  static constexpr std::array<Rule, 20> kRules{{
      {"ational", "ate", m_positive}, {"tional", "tion", m_positive}, {"enci", "ence", m_positive},
      {"anci", "ance", m_positive},   {"izer", "ize", m_positive},    {"abli", "able", m_positive},
      {"alli", "al", m_positive},     {"entli", "ent", m_positive},   {"eli", "e", m_positive},
      {"ousli", "ous", m_positive},   {"ization", "ize", m_positive}, {"ation", "ate", m_positive},
      {"ator", "ate", m_positive},    {"alism", "al", m_positive},    {"iveness", "ive", m_positive},
      {"fulness", "ful", m_positive}, {"ousness", "ous", m_positive}, {"aliti", "al", m_positive},
      {"iviti", "ive", m_positive},   {"biliti", "ble", m_positive},
  }};
  apply_first(w, kRules);
}

void step3(std::string& w) {
  static constexpr std::array<Rule, 7> kRules{{
      {"icate", "ic", m_positive},
      {"ative", "", m_positive},
      {"alize", "al", m_positive},
      {"iciti", "ic", m_positive},
      {"ical", "ic", m_positive},
      {"ful", "", m_positive},
      {"ness", "", m_positive},
  }};
  apply_first(w, kRules);
}

void step4(std::string& w) {
  static constexpr std::array<Rule, 19> kRules{{
      {"al", "", m_above_one},    {"ance", "", m_above_one}, {"ence", "", m_above_one},
      {"er", "", m_above_one},    {"ic", "", m_above_one},   {"able", "", m_above_one},
      {"ible", "", m_above_one},  {"ant", "", m_above_one},  {"ement", "", m_above_one},
      {"ment", "", m_above_one},  {"ent", "", m_above_one},  {"ion", "", m_above_one_st},
      {"ou", "", m_above_one},    {"ism", "", m_above_one},  {"ate", "", m_above_one},
      {"iti", "", m_above_one},   {"ous", "", m_above_one},  {"ive", "", m_above_one},
      {"ize", "", m_above_one},
  }};
  apply_first(w, kRules);
}

void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  const std::string_view stem(w.data(), w.size() - 1);
  const int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

void step5b(std::string& w) {
  if (ends_with(w, "ll") && measure(std::string_view(w).substr(0, w.size() - 1)) > 1) w.pop_back();
}

}  // namespace

std::string stem(std::string_view token) {
  std::string w(token);
  if (w.empty()) return w;
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace crisis_pulse::text
