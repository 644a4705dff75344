#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace crisis_pulse::classify {

using WordSet = std::set<std::string, std::less<>>;

// label -> stemmed words for one indicator.
struct LabelLexicon {
  std::map<std::string, WordSet> words;
};

// Everything the baseline classifiers read. On disk:
//   <root>/<indicator>/<label>.txt   (sentiment, emotion, intent, abuse, sarcasm, phase)
//   <root>/binary/<category>.txt     (disaster, humanitarian, medical)
// One entry per line, '#' comments. Entries go through the same cleaning and
// stemming as messages, so they can be written as plain words.
struct LexiconSet {
  std::map<std::string, LabelLexicon> indicators;
  std::map<std::string, WordSet> categories;

  static LexiconSet load(const std::filesystem::path& root);
};

WordSet parse_word_list(std::string_view contents);

}  // namespace crisis_pulse::classify
